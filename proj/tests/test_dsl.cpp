#include <gtest/gtest.h>

#include "moment_lst/dsl.hpp"
#include "moment_lst/errors.hpp"
#include "random_ast.hpp"
#include "support.hpp"

using namespace mlst;
using namespace mlst::dsl;
using mlst::testing::I;
using mlst::testing::Z;
using mlst::testing::random_expr;

namespace {

void expect_parse_error(std::string_view text, int line, int column) {
    try {
        parse(text);
        ADD_FAILURE() << "expected a parse error for " << text;
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), line) << text;
        EXPECT_EQ(e.column(), column) << text;
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
    }
}

}  // namespace

TEST(Parse, Examples) {
    const Expr t = parse("lst(z^2-1; z^2-1; (z+1)^2)");
    EXPECT_EQ(t->kind, NodeKind::Lst);
    const LstTriple v = parse_triple("lst(z^2-1; z^2-1; (z+1)^2)");
    EXPECT_EQ(v.l, Z * Z - 1);
    EXPECT_EQ(v.m, Z * Z - 1);
    EXPECT_EQ(v.c, (Z + 1) * (Z + 1));

    const Expr c = parse("2*leb + delta(1)");
    EXPECT_EQ(c->kind, NodeKind::Add);
    const HermitianFunctional f = parse_functional("2*leb + delta(1)");
    EXPECT_EQ(f.moment(0), Scalar(3));
    EXPECT_EQ(f.moment(4), Scalar(1));
}

TEST(Parse, Errors) {
    expect_parse_error("delta(", 1, 7);
    expect_parse_error("lst(1; 2)", 1, 9);
    expect_parse_error("z^x", 1, 3);
    expect_parse_error("1 +\n  # 2", 2, 3);
    expect_parse_error("(z + 1", 1, 7);
    expect_parse_error("leb leb", 1, 5);
}

TEST(Evaluate, Scalars) {
    EXPECT_EQ(parse_scalar("1/2 - 3i"), Scalar(mpq_class(1, 2), -3));
    EXPECT_EQ(parse_scalar("i^2"), Scalar(-1));
    EXPECT_EQ(parse_scalar("(1+i)^-1"), Scalar(mpq_class(1, 2), mpq_class(-1, 2)));
    EXPECT_FALSE(parse_scalar("0.5").is_exact());
    EXPECT_EQ(parse_scalar("2.5e-1").to_complex(), std::complex<double>(0.25, 0.0));
}

TEST(Evaluate, Polynomials) {
    EXPECT_EQ(parse_polynomial("z^-2*(1+2i) + 3"), LaurentPolynomial(-2, {Scalar(1, 2), 0, 3}));
    EXPECT_EQ(parse_polynomial("-z^2"), -(Z * Z));
    // Rendered polynomials re-parse to themselves.
    const LaurentPolynomial p(-2, {Scalar(-1, -2), Scalar(mpq_class(1, 3)), 0, Scalar(0, 5)});
    EXPECT_EQ(parse_polynomial(p.to_string()), p);
}

TEST(Evaluate, Functionals) {
    const auto arc = parse_functional("arc");
    EXPECT_NEAR(arc.moment(1).to_complex().real(), -2.0 / M_PI, 1e-15);
    const auto m = parse_functional("moments[1, 1/2, i]");
    EXPECT_EQ(m.moment(2), I);
    EXPECT_EQ(m.moment(-2), -I);
    const auto r = parse_functional("rational(1+z; 1-z)");
    EXPECT_EQ(r.moment(3), Scalar(1));
}

TEST(Evaluate, BackendAndTypeErrors) {
    EvalOptions exact;
    exact.backend = Backend::Exact;
    try {
        parse_polynomial("0.5*z", exact);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MixedBackend);
    }
    EvalOptions approx;
    approx.backend = Backend::Approx;
    EXPECT_FALSE(parse_polynomial("1 + z", approx).is_exact());
    EXPECT_THROW(parse_triple("leb"), Error);
    EXPECT_THROW(parse_functional("leb*z"), Error);
    EXPECT_THROW(parse_scalar("1/0"), Error);
}

TEST(RoundTrip, RandomAsts) {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 1000; ++trial) {
        const Expr e = random_expr(rng, 4);
        const std::string text = print(e);
        const Expr back = parse(text);
        ASSERT_TRUE(equal(e, back)) << text << " -> " << print(back);
        EXPECT_EQ(print(back), text);
    }
}
