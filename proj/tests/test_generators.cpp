#include <gtest/gtest.h>

#include "moment_lst/errors.hpp"
#include "moment_lst/generators.hpp"
#include "support.hpp"

using namespace mlst;
using mlst::testing::Gen;
using mlst::testing::I;
using mlst::testing::poly;
using mlst::testing::Z;

namespace {

std::vector<StepKind> kinds(const std::vector<ElementaryStep>& steps) {
    std::vector<StepKind> out;
    for (const auto& s : steps) out.push_back(s.kind);
    return out;
}

HermitianFunctional arc_image() { return lst_image(arc_lebesgue(), 1, Z, 2); }

/// Every step is elementary, relates its own functionals, and the chain
/// recomposes to t up to a unit.
void expect_round_trip(const std::vector<ElementaryStep>& steps, const LstTriple& t, const Tolerance& tol) {
    for (const auto& s : steps) {
        EXPECT_EQ(s.implied_kind(), s.kind);
        EXPECT_TRUE(s.input_mu0.is_real(tol)) << s.input_mu0.to_string();
        EXPECT_TRUE(s.output_mu0.is_real(tol)) << s.output_mu0.to_string();
        const PowerSeries r = s.input_cs * s.a - s.output_cs * s.b + (-LaurentPolynomial(s.c));
        for (int j = 0; j <= r.order(); ++j) EXPECT_TRUE(r[j].is_zero(tol)) << j << ": " << r[j].to_string();
    }
    const Recomposition rc = recompose(steps, 32, tol);
    EXPECT_TRUE(rc.verification.holds());
    EXPECT_TRUE(unit_equivalent(rc.triple, t, tol).has_value())
        << rc.triple.l.to_string() << " | " << rc.triple.m.to_string() << " | " << rc.triple.c.to_string();
}

}  // namespace

TEST(Normalize, Examples) {
    const PolyLst a = normalize(make_triple(1, 1 - Z * Z, 0));
    EXPECT_EQ(a.b, 1 - Z * Z);
    EXPECT_EQ(a.lst_class(), (LstClass{0, 2, std::nullopt}));
    EXPECT_EQ(a.lst_class().to_string(), "(0,2)");

    const PolyLst b = normalize(make_triple(Z, 1, -2));
    EXPECT_EQ(b.a, Z);
    EXPECT_EQ(b.lst_class(), (LstClass{1, 0, 0}));

    const PolyLst c = normalize(make_triple(Z.shifted(-2), 1, 0));
    EXPECT_EQ(c.a, 1);
    EXPECT_EQ(c.b, Z);
    EXPECT_EQ(c.lst_class().to_string(), "(0,1)");
}

TEST(Roots, ExactAndApproximate) {
    EXPECT_EQ(exact_root(Z * Z + 1).value().abs(), 1.0);
    const auto r = exact_root((Z - Scalar(mpq_class(2, 3), mpq_class(-1, 5))) * (Z * Z - 2));
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r, Scalar(mpq_class(2, 3), mpq_class(-1, 5)));
    EXPECT_FALSE(exact_root(Z * Z - 2).has_value());
    EXPECT_EQ(exact_root(Z * (Z - 5)).value(), Scalar(0));
    // Repeated roots go through the squarefree part.
    EXPECT_EQ(exact_root(pow(Z - Scalar(mpq_class(1, 7)), 3)).value(), Scalar(mpq_class(1, 7)));

    const auto roots = approximate_roots(Z * Z - 2);
    ASSERT_EQ(roots.size(), 2u);
    EXPECT_NEAR(std::abs(roots[0]), std::sqrt(2.0), 1e-12);
}

TEST(SplitLinear, ThreeTermExample) {
    // F (z^2 - 1) = G (z^2 - 1) + (z + 1)^2 with G = 1.
    const auto u = rational(2 * Z, Z - 1);
    const PolyLst p = normalize(make_triple(Z * Z - 1, Z * Z - 1, (Z + 1) * (Z + 1)));
    const SplitResult r = split_linear(p, Side::F, u);
    EXPECT_EQ(r.step.kind, StepKind::C10);
    EXPECT_TRUE(unit_ratio(r.step.a, Z - 1).has_value());
    EXPECT_TRUE(r.step.c.is_exact_zero());
    EXPECT_TRUE(unit_ratio(r.residual.a, Z + 1).has_value());
    EXPECT_EQ(r.residual.lst_class(), (LstClass{1, 2, 2}));
    EXPECT_TRUE(r.replacement.cs(0)[0].is_real());
    const LstTriple rest = make_triple(r.residual.a, r.residual.b, r.residual.c);
    EXPECT_TRUE(verify_lst(r.replacement, leb(), rest).holds());
}

TEST(SplitLinear, ChoosesRealConstant) {
    Gen g(61);
    for (int trial = 0; trial < 20; ++trial) {
        const auto v = g.closed_form(2);
        const LaurentPolynomial a = g.split_polynomial(2);
        const auto u = lst_image(v, a, a.coeff(0), 0);
        const SplitResult r = split_linear(normalize(make_triple(a, a.coeff(0), 0)), Side::F, u);
        EXPECT_TRUE(r.replacement.cs(0)[0].is_real());
        EXPECT_TRUE(r.step.a.coeff(0).is_real());
    }
}

TEST(SplitLinear, Errors) {
    const PolyLst p = normalize(make_triple(1, 1 + Z, 0));
    EXPECT_THROW(
        {
            try {
                split_linear(p, Side::F, leb());
            } catch (const Error& e) {
                EXPECT_EQ(e.code(), ErrorCode::NoDegreeToSplit);
                throw;
            }
        },
        Error);
    const PolyLst q = normalize(make_triple(Z * Z - 2, 1, 0));
    try {
        split_linear(q, Side::F, rational(1, Z * Z - 2));
        ADD_FAILURE() << "expected NoLinearFactor";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoLinearFactor);
    }
    const PolyLst approx{(Z * Z - 2).to_approx(), 1, 0};
    EXPECT_NO_THROW(split_linear(approx, Side::F, rational((Z * Z - 2).to_approx(), 1)));
}

TEST(Reduce00t, OneStep) {
    const auto v = delta(1);
    const auto u = lst_image(v, 1, 1, 1 + Z);
    const PolyLst p = normalize(make_triple(1, 1, 1 + Z));
    const ReduceResult r = reduce_00t(p, u, v);
    EXPECT_EQ(kinds(r.f_steps), (std::vector{StepKind::C000, StepKind::C01}));
    EXPECT_EQ(kinds(r.g_steps), (std::vector{StepKind::C10, StepKind::C000}));
    ASSERT_TRUE(r.residual.lst_class().t.has_value());
    EXPECT_EQ(*r.residual.lst_class().t, 0);
    const LstTriple rest = make_triple(r.residual.a, r.residual.b, r.residual.c);
    EXPECT_TRUE(verify_lst(r.u_tilde, r.v_tilde, rest).holds());
}

TEST(Reduce00t, Errors) {
    const auto expect_code = [](auto&& f, ErrorCode code) {
        try {
            f();
            ADD_FAILURE() << "expected " << error_code_name(code);
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), code) << e.what();
        }
    };
    expect_code([] { reduce_00t(normalize(make_triple(1, 1, 3)), leb(), leb()); }, ErrorCode::InvalidArgument);
    expect_code([] { reduce_00t(normalize(make_triple(1, 1, Z)), leb(), leb()); },
                ErrorCode::DegenerateConstantFunctional);
    expect_code([] { reduce_00t(normalize(make_triple(1, 1, 1 + Z)), delta(1), delta(1)); },
                ErrorCode::VerificationFailed);
}

TEST(Decompose, Examples) {
    const auto v = delta(1);
    const LstTriple t1 = make_triple(1, 1 - Z * Z, 0);
    const auto u1 = lst_image(v, 1, 1 - Z * Z, 0);
    const auto s1 = decompose(t1, u1, v);
    EXPECT_EQ(kinds(s1), (std::vector{StepKind::C01, StepKind::C01}));
    expect_round_trip(s1, t1, {});

    const LstTriple t2 = make_triple(Z, 1, -2);
    const auto s2 = decompose(t2, arc_lebesgue(), arc_image());
    EXPECT_EQ(kinds(s2), (std::vector{StepKind::C10, StepKind::C000}));
    expect_round_trip(s2, t2, {});

    const LstTriple t3 = make_triple(1, 1, 0);
    const auto s3 = decompose(t3, leb(), leb());
    ASSERT_EQ(s3.size(), 1u);
    EXPECT_EQ(s3[0].kind, StepKind::C000);
    EXPECT_EQ(s3[0].a, 1);
    EXPECT_EQ(s3[0].b, 1);
    EXPECT_TRUE(s3[0].c.is_exact_zero());
    expect_round_trip(s3, t3, {});
}

TEST(Decompose, RejectsTripleNotRelatingTheFunctionals) {
    const auto u = combine({{Scalar(mpq_class(1, 2)), delta(1)}, {Scalar(mpq_class(1, 2)), leb()}});
    try {
        decompose(make_triple(Z, 1, 0), u, leb());
        ADD_FAILURE() << "expected VerificationFailed";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::VerificationFailed);
    }
}

TEST(Decompose, DegenerateConstantFunctional) {
    // F = 1 is constant, so the (0,0,1) reduction uses kappa = 1.
    const LstTriple t = make_triple(1, 1, -Z);
    const auto v = lst_image(leb(), 1, 1, Z);
    expect_round_trip(decompose(t, leb(), v), t, {});
}

TEST(Recompose, EmptyAndReordered) {
    const Recomposition e = recompose({});
    EXPECT_EQ(e.triple.l, 1);
    EXPECT_EQ(e.triple.m, 1);
    EXPECT_TRUE(e.triple.c.is_zero());

    auto steps = decompose(make_triple(Z, 1, -2), arc_lebesgue(), arc_image());
    std::swap(steps[0], steps[1]);
    try {
        recompose(steps);
        ADD_FAILURE() << "expected ChainMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ChainMismatch);
    }
}

TEST(Decompose, RandomExactRoundTrip) {
    Gen g(62);
    for (int trial = 0; trial < 40; ++trial) {
        const auto v = g.closed_form(3);
        const LaurentPolynomial a = g.split_polynomial(g.integer(0, 2));
        const LaurentPolynomial b = g.split_polynomial(g.integer(0, 2));
        std::vector<Scalar> cc = g.polynomial(g.integer(0, 3)).coeffs();
        // F(0) = (nu0 b0 + c0) / a0 must be real.
        cc.front() = a.coeff(0) * Scalar(g.integer(-3, 3)) - v.cs(0)[0] * b.coeff(0);
        const LaurentPolynomial c = LaurentPolynomial(0, std::move(cc));
        // A unit shift of the triple must not change the chain.
        const int k = g.integer(-1, 1);
        const LstTriple t = make_triple(a.shifted(k), b.shifted(k), c.shifted(k));
        const auto u = lst_image(v, a, b, c);
        const auto steps = decompose(t, u, v);
        expect_round_trip(steps, t, {});
        for (const auto& s : steps) {
            EXPECT_TRUE(elementary_relation(s, *s.input, *s.output, 8).all_hold) << trial;
        }
    }
}

TEST(Decompose, RandomApproximateRoundTrip) {
    std::mt19937_64 rng(63);
    std::normal_distribution<double> n(0.0, 1.0);
    const Tolerance tol{1e-8};
    auto cpoly = [&](int deg) {
        std::vector<Scalar> c;
        for (int k = 0; k <= deg; ++k) c.push_back(Scalar::approx(n(rng), n(rng)));
        return LaurentPolynomial(0, std::move(c));
    };
    for (int trial = 0; trial < 20; ++trial) {
        LaurentPolynomial q = cpoly(2);
        q += LaurentPolynomial(Scalar::approx(4.0));
        LaurentPolynomial p = cpoly(2);
        p += LaurentPolynomial(q.coeff(0) * Scalar::approx(n(rng)) - p.coeff(0));
        const auto v = rational(p, q, tol);
        const LaurentPolynomial a = cpoly(2) + LaurentPolynomial(Scalar::approx(3.0));
        const LaurentPolynomial b = cpoly(1);
        LaurentPolynomial c = cpoly(2);
        c += LaurentPolynomial(a.coeff(0) * Scalar::approx(n(rng)) - v.cs(0)[0] * b.coeff(0) - c.coeff(0));
        const LstTriple t = make_triple(a, b, c, tol);
        const auto u = lst_image(v, a, b, c, tol);
        expect_round_trip(decompose(t, u, v, 32, tol), t, tol);
    }
}

TEST(ElementaryRelation, Identity) {
    ElementaryStep s = decompose(make_triple(1, 1, 0), leb(), leb())[0];
    const auto report = elementary_relation(s, leb(), leb());
    EXPECT_TRUE(report.all_hold);
    EXPECT_EQ(report.rows.size(), 31u);
}

TEST(ElementaryRelation, ArcStep) {
    const auto steps = decompose(make_triple(Z, 1, -2), arc_lebesgue(), arc_image());
    const ElementaryStep& s = steps[0];
    ASSERT_EQ(s.kind, StepKind::C10);
    const auto report = elementary_relation(s, *s.input, *s.output, 16);
    EXPECT_TRUE(report.all_hold);
    EXPECT_EQ(report.rows.front().exponent, -15);
}

TEST(ElementaryRelation, C01WithLebesgue) {
    // F = 1 + iz against G = 1: u = v (1 + iz) on the PP side with the
    // leb correction.
    const LaurentPolynomial b = 1 + I * Z;
    const auto u = rational(b, 1);
    ElementaryStep s = decompose(make_triple(1, b, 0), u, leb())[0];
    ASSERT_EQ(s.kind, StepKind::C01);
    const auto report = elementary_relation(s, u, leb());
    EXPECT_TRUE(report.all_hold);
    for (const auto& row : report.rows) {
        if (row.exponent > 0) EXPECT_EQ(row.split_side, "PP");
        if (row.exponent < 0) EXPECT_EQ(row.split_side, "PP_*");
        if (row.exponent == 0) EXPECT_EQ(row.split_side, "scalar");
    }
}

TEST(ElementaryRelation, RandomConformingCoefficients) {
    Gen g(64);
    auto real = [&] { return Scalar(g.integer(-4, 4)); };
    auto nonzero_real = [&] {
        for (;;) {
            if (int k = g.integer(-4, 4); k != 0) return Scalar(k);
        }
    };
    for (int trial = 0; trial < 30; ++trial) {
        const auto v = g.closed_form(3);
        const Scalar nu0 = v.cs(0)[0];

        // c000: u alpha = v beta + c with alpha real.
        const Scalar alpha = nonzero_real();
        const Scalar beta = g.nonzero_gaussian();
        const Scalar c = real() - (beta * nu0).imag_part() * I;
        const auto u0 = lst_image(v, alpha, beta, c);
        ElementaryStep s0 = decompose(make_triple(1, beta / alpha, c / alpha), u0, v)[0];
        s0.a = alpha, s0.b = beta, s0.c = c;
        EXPECT_TRUE(elementary_relation(s0, u0, v, 16).all_hold) << trial;

        // c01: u alpha = v (beta0 + beta1 z).
        const LaurentPolynomial bb(0, {real(), g.nonzero_gaussian()});
        const auto u1 = lst_image(v, alpha, bb, 0);
        ElementaryStep s1;
        s1.kind = StepKind::C01, s1.a = alpha, s1.b = bb;
        EXPECT_TRUE(elementary_relation(s1, u1, v, 16).all_hold) << trial;

        // c10: u (alpha0 + alpha1 z) = v beta.
        const LaurentPolynomial aa(0, {real(), g.nonzero_gaussian()});
        const Scalar beta2 = nonzero_real();
        const auto v2 = lst_image(u1, beta2, aa, 0);
        ElementaryStep s2;
        s2.kind = StepKind::C10, s2.a = aa, s2.b = beta2;
        EXPECT_TRUE(elementary_relation(s2, u1, v2, 16).all_hold) << trial;
    }
}

TEST(ElementaryRelation, ConstraintViolation) {
    ElementaryStep s;
    s.kind = StepKind::C01;
    s.a = 1;
    s.b = I + Z;
    try {
        elementary_relation(s, leb(), leb());
        ADD_FAILURE() << "expected ConstraintViolation";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConstraintViolation);
    }
    s.kind = StepKind::C10;
    try {
        elementary_relation(s, leb(), leb());
        ADD_FAILURE() << "expected ConstraintViolation";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConstraintViolation);
    }
}
