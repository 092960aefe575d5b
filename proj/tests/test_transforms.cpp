#include <gtest/gtest.h>

#include "moment_lst/errors.hpp"
#include "moment_lst/transforms.hpp"
#include "support.hpp"

using namespace mlst;
using mlst::testing::I;
using mlst::testing::poly;
using mlst::testing::Z;

namespace {

HermitianFunctional leb_plus_delta() { return combine({{Scalar(1), leb()}, {Scalar(1), delta(1)}}); }

bool unit_multiple(const LaurentPolynomial& a, const LaurentPolynomial& b) { return unit_ratio(a, b).has_value(); }

}  // namespace

TEST(VerifyRm, Examples) {
    const auto v = leb_plus_delta();
    EXPECT_TRUE(verify_rm(leb(), v, Z - 1, Z - 1).holds());
    EXPECT_TRUE(verify_rm(leb(), v, Z * Z - 1, Z * Z - 1).holds());
    const auto bad = verify_rm(leb(), delta(1), 1, 1);
    EXPECT_EQ(bad.verdict, Verdict::Fails);
    EXPECT_EQ(bad.first_failure, 1);
}

TEST(VerifyRm, RationalIdentityAloneIsNotEnough) {
    // (F + F_*) L = (G + G_*) M holds here, yet the moments differ.
    const auto v = leb_plus_delta();
    EXPECT_EQ(verify_rm(leb(), v, 1, 1).verdict, Verdict::Fails);
}

TEST(RmToLst, Examples) {
    const auto v = leb_plus_delta();
    EXPECT_EQ(rm_to_lst(leb(), v, Z - 1, Z - 1).c, Z + 1);
    EXPECT_EQ(rm_to_lst(leb(), v, Z * Z - 1, Z * Z - 1).c, (Z + 1) * (Z + 1));
    const auto u = rational((1 + Z) * (1 + Z), 1 - Z * Z * Scalar(mpq_class(1, 4)));
    EXPECT_TRUE(rm_to_lst(u, u, Z + 3, Z + 3).c.is_zero());
    EXPECT_THROW(rm_to_lst(leb(), delta(1), 1, 1), Error);
}

TEST(DeltaCertificate, Examples) {
    const auto cert = delta_certificate(delta(1));
    ASSERT_TRUE(cert);
    EXPECT_EQ(cert->q, poly(0, {-I, I}));
    EXPECT_EQ(cert->p, poly(0, {-I, -I}));
    EXPECT_EQ(cert->q.star_p(1), cert->q);
    EXPECT_EQ(cert->p.star_p(1), -cert->p);
    EXPECT_FALSE(delta_certificate(leb()));

    const auto two = combine({{Scalar(1), delta(1)}, {Scalar(1), delta(-1)}});
    const auto c2 = delta_certificate(two);
    ASSERT_TRUE(c2);
    EXPECT_EQ(c2->q.span(), 2);
    EXPECT_TRUE(divmod(Z * Z - 1, c2->q).remainder.is_zero());
    for (const auto& m : act(two, c2->q).moments(-20, 20)) EXPECT_TRUE(m.is_exact_zero());

    EXPECT_THROW(delta_certificate(truncated({1, 0})), Error);
    EXPECT_FALSE(delta_certificate(arc_lebesgue()));
}

TEST(RatToLebRm, Examples) {
    auto [q, m] = rat_to_leb_rm(leb_plus_delta());
    EXPECT_EQ(q, poly(0, {-I, I}));
    EXPECT_EQ(m, poly(0, {-I, I}));
    auto [q2, m2] = rat_to_leb_rm(delta(1));
    EXPECT_EQ(q2, poly(0, {-I, I}));
    EXPECT_TRUE(m2.is_zero());
    auto [q3, m3] = rat_to_leb_rm(leb());
    EXPECT_EQ(q3, LaurentPolynomial(1));
    EXPECT_EQ(m3, LaurentPolynomial(1));
}

TEST(MinimizeLst, Examples) {
    const auto t = minimize_lst(make_triple(Z * Z - 1, Z * Z - 1, (Z + 1) * (Z + 1)));
    EXPECT_EQ(t.l, Z - 1);
    EXPECT_EQ(t.m, Z - 1);
    EXPECT_EQ(t.c, Z + 1);
    ASSERT_TRUE(t.symmetry);
    EXPECT_EQ(t.symmetry->p, 1);

    const auto w = minimize_lst(make_triple(1, 1 - Z * Z, 0));
    EXPECT_EQ(w.l, LaurentPolynomial(1));
    EXPECT_EQ(w.m, 1 - Z * Z);
    EXPECT_FALSE(w.symmetry);
    EXPECT_EQ(minimize_lst(t).l, t.l);
}

TEST(MinimizeRm, Examples) {
    const auto v = leb_plus_delta();
    auto [l0, m0] = minimize_rm(leb(), v, Z * Z - 1, Z * Z - 1);
    EXPECT_EQ(l0, Z - 1);
    EXPECT_EQ(m0, Z - 1);
    auto [l1, m1] = minimize_rm(leb(), v, Z - 1, Z - 1);
    EXPECT_TRUE(unit_multiple(l1, Z - 1));
    const auto u = rational(2 + Z, 1 - Z * Scalar(mpq_class(1, 3)));
    auto [l2, m2] = minimize_rm(u, u, Z * Z + 3, Z * Z + 3);
    EXPECT_EQ(l2, LaurentPolynomial(1));
    EXPECT_EQ(m2, LaurentPolynomial(1));
    EXPECT_THROW(minimize_rm(delta(1), delta(1), 1, 1), Error);
}

TEST(Classify, Examples) {
    const auto v = leb_plus_delta();
    const auto from_rm = classify(leb(), v, make_triple(Z - 1, Z - 1, Z + 1));
    EXPECT_EQ(from_rm.tag, ClassTag::FromRM);

    const auto u = rational((1 + Z) * (1 + Z), 1);
    const auto wild = classify(u, delta(1), make_triple(1, 1 - Z * Z, 0));
    EXPECT_EQ(wild.tag, ClassTag::Wild);

    const auto arc = arc_lebesgue();
    const auto g = apply_lst(arc, reverse(make_triple(Z, 1, -2)));
    const auto arc_wild = classify(arc, g, make_triple(Z, 1, -2));
    EXPECT_EQ(arc_wild.tag, ClassTag::Wild);

    const auto trunc = truncated({1, 0, 0, 0});
    EXPECT_EQ(classify(trunc, trunc, make_triple(1, 1, 0)).tag, ClassTag::Inconclusive);

    EXPECT_THROW(classify(leb(), v, make_triple(Z - 1, Z - 1, Z + 2)), Error);
}

TEST(VerifyLst, Examples) {
    const auto arc = arc_lebesgue();
    const auto g = apply_lst(arc, reverse(make_triple(Z, 1, -2)));
    EXPECT_TRUE(verify_lst(arc, g, make_triple(Z, 1, -2)).holds());
    const auto v = leb_plus_delta();
    const auto ok = verify_lst(leb(), v, make_triple(Z - 1, Z - 1, Z + 1));
    EXPECT_TRUE(ok.holds());
    EXPECT_TRUE(ok.exact);
    const auto bad = verify_lst(leb(), v, make_triple(Z - 1, Z - 1, Z + 2));
    EXPECT_EQ(bad.verdict, Verdict::Fails);
    EXPECT_EQ(bad.first_failure, 0);
}

TEST(ApplyLst, Examples) {
    EXPECT_EQ(*apply_lst(delta(1), make_triple(1, 1 - Z * Z, 0)).rational(), RationalCS((1 + Z) * (1 + Z), 1));
    EXPECT_EQ(*apply_lst(leb(), make_triple(1, 1, 0)).rational(), RationalCS());
    const auto g = apply_lst(arc_lebesgue(), reverse(make_triple(Z, 1, -2)));
    EXPECT_NEAR(g.cs(1)[0].to_complex().real(), 2.0, 1e-15);
    EXPECT_NEAR(g.cs(1)[1].to_complex().real(), 1.0, 1e-15);
}

TEST(DecomposeGeneral, ArcExample) {
    const auto arc = arc_lebesgue();
    const auto g = apply_lst(arc, reverse(make_triple(Z, 1, -2)));
    const auto d = decompose_general(arc, g, make_triple(Z, 1, -2), 24);
    EXPECT_EQ(d.p, 2);
    const Scalar h(mpq_class(1, 2));
    EXPECT_EQ(d.m_plus, (1 + Z * Z) * h);
    EXPECT_EQ(d.m_minus, (1 - Z * Z) * Scalar(0, mpq_class(-1, 2)));
    EXPECT_EQ(d.c_plus, -1 - Z * Z);
    EXPECT_EQ(d.c_minus, (1 - Z * Z) * I);
    EXPECT_TRUE(d.identity.holds());
    EXPECT_TRUE(d.hat_identity.holds());
}

TEST(DecomposeGeneral, RmCaseHasNoAntisymmetricPart) {
    const auto d = decompose_general(leb(), leb_plus_delta(), make_triple(Z - 1, Z - 1, Z + 1));
    EXPECT_TRUE(d.m_minus.is_zero());
    EXPECT_TRUE(d.c_plus.is_zero());
    EXPECT_TRUE(d.identity.exact);
    const auto id = decompose_general(leb(), leb(), make_triple(1 + Z, 1 + Z, 0));
    EXPECT_TRUE(id.m_minus.is_zero());
    EXPECT_TRUE(id.c_plus.is_zero());
    EXPECT_TRUE(id.c_minus.is_zero());
}

TEST(FindLst, Examples) {
    const auto t = find_lst(leb(), delta(1));
    EXPECT_TRUE(unit_equivalent(t, make_triple(1 - Z, 1 - Z, -2 * Z)));
    const auto u = rational(3 + Z, 2 - Z);
    const auto same = find_lst(u, u);
    EXPECT_TRUE(unit_equivalent(same, make_triple(1, 1, 0)));
    EXPECT_TRUE(unit_equivalent(find_lst(leb(), leb_plus_delta()), make_triple(Z - 1, Z - 1, Z + 1)));
    EXPECT_THROW(find_lst(arc_lebesgue(), leb()), Error);
}

TEST(Witness, Examples) {
    const auto t = find_lst(leb(), delta(1));
    const auto w = rat_nonuniqueness_witness(leb(), delta(1), t);
    EXPECT_TRUE(unit_equivalent(w, make_triple(1 - Z, 2 - 2 * Z, -1 - 3 * Z)));
    EXPECT_TRUE(verify_lst(leb(), delta(1), w).holds());
    EXPECT_FALSE(unit_equivalent(w, t));
    const std::vector<LaurentPolynomial> parts{w.l, w.m, w.c};
    EXPECT_EQ(gcd(parts), LaurentPolynomial(1));

    const auto ll = rat_nonuniqueness_witness(leb(), leb(), make_triple(1, 1, 0));
    EXPECT_TRUE(unit_equivalent(ll, make_triple(1, 2, -1)));
}

TEST(FindRm, Examples) {
    const auto v = leb_plus_delta();
    auto [l, m] = find_rm(leb(), v);
    EXPECT_TRUE(unit_multiple(l, Z - 1));
    EXPECT_TRUE(unit_multiple(m, Z - 1));
    auto [l2, m2] = find_rm(leb(), leb());
    EXPECT_EQ(l2, LaurentPolynomial(1));
    EXPECT_EQ(m2, LaurentPolynomial(1));
    const auto w = combine({{Scalar(1), leb()}, {Scalar(1), delta(-1)}});
    auto [l3, m3] = find_rm(v, w);
    EXPECT_TRUE(verify_rm(v, w, l3, m3).holds());
    EXPECT_TRUE(divmod(pow(Z * Z - 1, 2), l3).remainder.is_zero());
    EXPECT_THROW(find_rm(leb(), delta(1)), Error);
}
