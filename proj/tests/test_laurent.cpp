#include <gtest/gtest.h>

#include "moment_lst/errors.hpp"
#include "moment_lst/laurent.hpp"
#include "support.hpp"

using namespace mlst;
using mlst::testing::Gen;
using mlst::testing::I;
using mlst::testing::poly;
using mlst::testing::Z;

TEST(Laurent, Arithmetic) {
    EXPECT_EQ((Z - 1) * (Z + 1), Z * Z - 1);
    const auto l = poly(-1, {2, 0, I});
    EXPECT_EQ(l + LaurentPolynomial(), l);
    const auto zero = (1 - Z * Z) * LaurentPolynomial(-1) + (1 - Z * Z);
    EXPECT_TRUE(zero.is_zero());
    EXPECT_TRUE(zero.coeffs().empty());
}

TEST(Laurent, Star) {
    EXPECT_EQ((Z - 1).star(), Z.star() - 1);
    EXPECT_EQ(poly(-1, {1}) - 1, (Z - 1).star());
    // -i + iz -> i - i z^-1
    EXPECT_EQ(poly(0, {-I, I}).star(), poly(-1, {-I, I}));
    EXPECT_TRUE(LaurentPolynomial().star().is_zero());
}

TEST(Laurent, StarP) {
    EXPECT_EQ((Z - 1).star_p(1), 1 - Z);
    const auto q = poly(0, {-I, I});
    EXPECT_EQ(q.star_p(1), q);
    const auto c = poly(-2, {1, I, 3, Scalar(0, -2)});
    EXPECT_EQ(c.star_p(3).star_p(3), c);
}

TEST(Laurent, Divmod) {
    auto [q, r] = divmod(Z * Z - 1, Z - 1);
    EXPECT_EQ(q, Z + 1);
    EXPECT_TRUE(r.is_zero());

    // z is a unit, so the quotient is exact.
    auto [q2, r2] = divmod(Z + 1, Z);
    EXPECT_EQ(q2, 1 + Z.star());
    EXPECT_TRUE(r2.is_zero());

    const auto l = poly(-1, {3, I, 1});
    auto [q3, r3] = divmod(l, l);
    EXPECT_EQ(q3, LaurentPolynomial(1));
    EXPECT_TRUE(r3.is_zero());

    EXPECT_THROW(divmod(l, LaurentPolynomial()), Error);
}

TEST(Laurent, Gcd) {
    const LaurentPolynomial a = Z * Z - 1;
    const LaurentPolynomial b = pow(Z + 1, 2);
    EXPECT_EQ(gcd(std::vector{a, a, b}), Z + 1);
    EXPECT_EQ(gcd(std::vector<LaurentPolynomial>{Z - 1, Z - 1, Z + 1}), LaurentPolynomial(1));
    const auto l = poly(-2, {2, I, 4});
    EXPECT_EQ(gcd(l, LaurentPolynomial()), canonical(l));
    EXPECT_THROW(gcd(LaurentPolynomial(), LaurentPolynomial()), Error);
}

TEST(Laurent, IsSymmetric) {
    auto s1 = is_symmetric(poly(0, {-I, I}));
    ASSERT_TRUE(s1);
    EXPECT_EQ(s1->p, 1);
    EXPECT_EQ(s1->alpha, Scalar(1));

    auto s2 = is_symmetric(Z - 1);
    ASSERT_TRUE(s2);
    EXPECT_EQ(s2->p, 1);
    EXPECT_EQ(s2->alpha, Scalar(-1));

    auto s3 = is_symmetric(1 - Z * Z);
    ASSERT_TRUE(s3);
    EXPECT_EQ(s3->p, 2);
    EXPECT_EQ(s3->alpha, Scalar(-1));

    EXPECT_FALSE(is_symmetric(1 + 2 * Z));
}

TEST(Laurent, TripleSymmetry) {
    auto n = triple_symmetry(Z - 1, Z - 1, Z + 1);
    ASSERT_TRUE(n);
    EXPECT_EQ(n->alpha, Scalar(-1));
    EXPECT_EQ(n->k, -1);

    EXPECT_FALSE(triple_symmetry(1, 1 - Z * Z, 0));

    auto id = triple_symmetry(1, 1, 0);
    ASSERT_TRUE(id);
    EXPECT_EQ(id->alpha, Scalar(1));
    EXPECT_EQ(id->k, 0);
}

TEST(Laurent, SelfReciprocalNormalize) {
    auto r = self_reciprocal_normalize(1 - Z);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->first, poly(0, {-I, I}));
    EXPECT_EQ(r->first.star_p(1), r->first);
    EXPECT_FALSE(self_reciprocal_normalize(1 + 2 * Z));
}

TEST(LaurentProperty, RingAxioms) {
    Gen g(11);
    for (int it = 0; it < 200; ++it) {
        const auto a = g.laurent(3), b = g.laurent(3), c = g.laurent(3);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
    }
}

TEST(LaurentProperty, StarIsMultiplicativeAndConjugateLinear) {
    Gen g(12);
    for (int it = 0; it < 200; ++it) {
        const auto a = g.laurent(3), b = g.laurent(3);
        const Scalar s = g.gaussian();
        EXPECT_EQ((a * b).star(), a.star() * b.star());
        EXPECT_EQ((a * s + b).star(), a.star() * s.conj() + b.star());
    }
}

TEST(LaurentProperty, GcdDividesAndIsUnitInvariant) {
    Gen g(13);
    for (int it = 0; it < 150; ++it) {
        const auto common = g.polynomial(g.integer(0, 2));
        const auto a = common * g.laurent(2);
        const auto b = common * g.laurent(2);
        const auto d = gcd(a, b);
        EXPECT_TRUE(divmod(a, d).remainder.is_zero());
        EXPECT_TRUE(divmod(b, d).remainder.is_zero());
        EXPECT_TRUE(divmod(d, canonical(common)).remainder.is_zero());
        const auto unit = LaurentPolynomial::monomial(g.nonzero_gaussian(), g.integer(-3, 3));
        EXPECT_EQ(gcd(a * unit, b), d);
        const auto m = lcm(a, b);
        EXPECT_TRUE(divmod(m, canonical(a)).remainder.is_zero());
        EXPECT_TRUE(divmod(m, canonical(b)).remainder.is_zero());
    }
}

TEST(LaurentProperty, SymmetryFactorIsUnimodular) {
    Gen g(14);
    int found = 0;
    for (int it = 0; it < 300; ++it) {
        auto l = g.laurent(3);
        if (g.coin()) l = l * l.star_p(g.integer(-2, 2));  // force symmetric cases
        if (auto s = is_symmetric(l)) {
            ++found;
            EXPECT_EQ(s->alpha * s->alpha.conj(), Scalar(1));
            EXPECT_EQ(l.star_p(s->p), s->alpha * l);
        }
    }
    EXPECT_GT(found, 50);
}

TEST(Laurent, ToString) {
    EXPECT_EQ(poly(-2, {Scalar(-1, -2), 0, 3}).to_string(), "(-1-2i)*z^-2 + 3");
    EXPECT_EQ((Z * Z - 1).to_string(), "-1 + z^2");
    EXPECT_EQ(LaurentPolynomial().to_string(), "0");
}
