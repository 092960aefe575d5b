#include "moment_lst/generators.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "moment_lst/errors.hpp"

namespace mlst {

namespace {

int degree(const LaurentPolynomial& p) { return p.is_zero() ? -1 : p.max_exp(); }

bool all_exact(std::initializer_list<const LaurentPolynomial*> ps) {
    return std::all_of(ps.begin(), ps.end(), [](const LaurentPolynomial* p) { return p->is_exact(); });
}

/// Exact data keeps the rational normal form; approximate chains divide series.
HermitianFunctional image(const HermitianFunctional& v, const LaurentPolynomial& l, const LaurentPolynomial& m,
                          const LaurentPolynomial& c, const Tolerance& tol) {
    if (v.is_exact() && l.is_exact() && m.is_exact() && c.is_exact()) return lst_image(v, l, m, c, tol);
    return series_image(v, l, m, c, tol);
}

Scalar unit_i(bool exact) { return exact ? Scalar::i() : Scalar::approx(0.0, 1.0); }

ElementaryStep make_step(StepKind kind, LaurentPolynomial a, LaurentPolynomial b, Scalar c,
                         const HermitianFunctional& x, const HermitianFunctional& y, int order) {
    ElementaryStep s;
    s.kind = kind;
    s.a = std::move(a);
    s.b = std::move(b);
    s.c = std::move(c);
    s.input_cs = x.cs(x.clamp_order(order));
    s.output_cs = y.cs(y.clamp_order(order));
    s.input_mu0 = s.input_cs[0];
    s.output_mu0 = s.output_cs[0];
    s.input = x;
    s.output = y;
    return s;
}

/// Best rational approximations of x by continued fractions, in order.
std::vector<mpq_class> convergents(double x, long max_den) {
    std::vector<mpq_class> out;
    mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(r);
        if (std::abs(a) > 1e18) break;
        const mpz_class ai(a);
        const mpz_class h = ai * h0 + h1, k = ai * k0 + k1;
        if (k > max_den) break;
        out.emplace_back(h, k);
        out.back().canonicalize();
        h1 = h0, h0 = h, k1 = k0, k0 = k;
        const double frac = r - a;
        if (frac < 1e-15) break;
        r = 1.0 / frac;
    }
    return out;
}

std::optional<mpq_class> reconstruct(double x) {
    const double tol = 1e-9 * std::max(1.0, std::abs(x));
    for (const mpq_class& q : convergents(x, 100000000L)) {
        if (std::abs(q.get_d() - x) <= tol) return q;
    }
    return std::nullopt;
}

LaurentPolynomial derivative(const LaurentPolynomial& p) {
    if (p.is_zero() || p.max_exp() < 1) return {};
    std::vector<Scalar> d;
    for (int k = std::max(1, p.min_exp()); k <= p.max_exp(); ++k) d.push_back(p.coeff(k) * Scalar(k));
    return LaurentPolynomial(std::max(1, p.min_exp()) - 1, std::move(d));
}

/// Root r of p, preferring the smallest modulus; -conj(r) z + |r|^2 has a real
/// constant term and vanishes at r.
LaurentPolynomial linear_factor(const LaurentPolynomial& p, const Tolerance& tol) {
    if (p.coeff(0).is_zero(tol)) return LaurentPolynomial::z();
    Scalar r;
    if (p.is_exact()) {
        auto root = exact_root(p);
        if (!root) throw Error(ErrorCode::NoLinearFactor, p.to_string() + " has no root in Q(i)");
        r = *root;
    } else {
        r = Scalar(approximate_roots(p).front());
    }
    return LaurentPolynomial(0, {r * r.conj(), -r.conj()});
}

/// Moments of sum_j w_j L_j on n = lo..hi.
using Term = std::pair<HermitianFunctional, LaurentPolynomial>;

std::vector<Scalar> combined(const std::vector<Term>& terms, const LaurentPolynomial& leb_part, int lo, int hi) {
    std::vector<Scalar> out(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [f, l] : terms) {
        if (l.is_zero()) continue;
        const auto m = act(f, l).moments(lo, hi);
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += m[j];
    }
    for (int n = lo; n <= hi; ++n) out[static_cast<std::size_t>(n - lo)] += leb_part.coeff(-n);
    return out;
}

int relation_window(int order, std::initializer_list<std::pair<const HermitianFunctional*, const LaurentPolynomial*>> uses) {
    int w = order;
    for (const auto& [f, l] : uses) {
        if (auto x = act(*f, *l).window()) w = std::min(w, *x);
    }
    return w;
}

}  // namespace


std::string LstClass::to_string() const {
    std::string out = "(" + std::to_string(r) + "," + std::to_string(s);
    if (t) out += "," + std::to_string(*t);
    return out + ")";
}

LstClass PolyLst::lst_class() const {
    LstClass k{degree(a), degree(b), std::nullopt};
    if (!c.is_zero()) k.t = degree(c);
    return k;
}

PolyLst normalize(const LstTriple& t) {
    if (t.l.is_zero() || t.m.is_zero()) throw Error(ErrorCode::InvalidArgument, "LST needs nonzero L and M");
    int low = std::min(t.l.min_exp(), t.m.min_exp());
    if (!t.c.is_zero()) low = std::min(low, t.c.min_exp());
    return PolyLst{t.l.shifted(-low), t.m.shifted(-low), t.c.shifted(-low)};
}

std::string_view step_kind_name(StepKind kind) noexcept {
    switch (kind) {
        case StepKind::C000: return "c000";
        case StepKind::C10: return "c10";
        case StepKind::C01: return "c01";
    }
    return "c000";
}

std::optional<StepKind> ElementaryStep::implied_kind() const {
    if (!a.is_polynomial() || !b.is_polynomial() || a.is_zero() || b.is_zero()) return std::nullopt;
    const int r = degree(a), s = degree(b);
    if (r == 0 && s == 0) return StepKind::C000;
    if (!c.is_zero()) return std::nullopt;
    if (r == 1 && s == 0) return StepKind::C10;
    if (r == 0 && s == 1) return StepKind::C01;
    return std::nullopt;
}

SplitResult split_linear(const PolyLst& p, Side side, const HermitianFunctional& f, int order, const Tolerance& tol) {
    const LaurentPolynomial& target = side == Side::F ? p.a : p.b;
    if (degree(target) < 1) {
        throw Error(ErrorCode::NoDegreeToSplit, std::string(side == Side::F ? "A" : "B") + " = " +
                                                    target.to_string() + " has degree 0");
    }
    const LaurentPolynomial factor = linear_factor(target, tol);
    const LaurentPolynomial rest = exact_divide(target, factor, tol);
    const Scalar mu0 = f.cs(0)[0];
    const bool exact = factor.is_exact() && f.is_exact();
    if (side == Side::F) {
        // F A0 = F~ + c with F~(0) real.
        const Scalar c = unit_i(exact) * (factor.coeff(0) * mu0).imag_part();
        HermitianFunctional next = image(f, 1, factor, -LaurentPolynomial(c), tol);
        ElementaryStep step = make_step(StepKind::C10, factor, 1, c, f, next, order);
        return {std::move(step), PolyLst{rest, p.b, (p.c - rest * c).trimmed(tol)}, std::move(next)};
    }
    // G~ = G B0 + c with G~(0) real.
    const Scalar c = -(unit_i(exact) * (factor.coeff(0) * mu0).imag_part());
    HermitianFunctional next = image(f, 1, factor, LaurentPolynomial(c), tol);
    ElementaryStep step = make_step(StepKind::C01, 1, factor, c, next, f, order);
    return {std::move(step), PolyLst{p.a, rest, (p.c + rest * c).trimmed(tol)}, std::move(next)};
}

namespace {

struct Peeled {
    ElementaryStep constant;
    ElementaryStep linear;
    Scalar kappa;
    HermitianFunctional tilde;
    bool degenerate = false;
};

/// F = F~ kappa z + mu0 through the chain F -> F - mu0 -> F~. kappa is the
/// first nonzero Carathéodory coefficient, or 1 with F~ = 0 when F is
/// constant through the working order.
Peeled peel_constant(const HermitianFunctional& f, bool f_side, int order, const Tolerance& tol) {
    const PowerSeries s = f.cs(f.clamp_order(order));
    const Scalar mu0 = s[0];
    std::optional<Scalar> kappa;
    for (int j = 1; j <= s.order() && !kappa; ++j) {
        if (!s[j].is_zero(tol)) kappa = s[j];
    }
    const bool degenerate = !kappa;
    const LaurentPolynomial kz = LaurentPolynomial::monomial(kappa.value_or(Scalar(1)), 1);
    HermitianFunctional h = image(f, 1, 1, -LaurentPolynomial(mu0), tol);
    HermitianFunctional tilde = image(h, kz, 1, 0, tol);
    return Peeled{f_side ? make_step(StepKind::C000, 1, 1, mu0, f, h, order)
                         : make_step(StepKind::C000, 1, 1, -mu0, h, f, order),
                  f_side ? make_step(StepKind::C01, 1, kz, 0, h, tilde, order)
                         : make_step(StepKind::C10, kz, 1, 0, tilde, h, order),
                  kz.coeff(1), std::move(tilde), degenerate};
}

ReduceResult reduce_impl(const PolyLst& p, const HermitianFunctional& u, const HermitianFunctional& v, int order,
                         const Tolerance& tol, bool allow_degenerate) {
    if (degree(p.a) != 0 || degree(p.b) != 0 || degree(p.c) < 1) {
        throw Error(ErrorCode::InvalidArgument, "reduction needs class (0,0,t) with t >= 1, got " +
                                                    p.lst_class().to_string());
    }
    const Scalar lhs = p.a.coeff(0) * u.cs(0)[0];
    const Scalar rhs = p.b.coeff(0) * v.cs(0)[0] + p.c.coeff(0);
    if (!approx_equal(lhs, rhs, tol)) {
        throw Error(ErrorCode::VerificationFailed,
                    "constant terms disagree: " + lhs.to_string() + " != " + rhs.to_string());
    }
    auto run = [&](const HermitianFunctional& f, bool f_side) {
        Peeled peeled = peel_constant(f, f_side, order, tol);
        if (peeled.degenerate && !allow_degenerate) {
            throw Error(ErrorCode::DegenerateConstantFunctional,
                        f.label() + " is constant through order " + std::to_string(order));
        }
        return peeled;
    };
    Peeled fu = run(u, true);
    Peeled gv = run(v, false);
    const LaurentPolynomial c1 = (p.c - LaurentPolynomial(p.c.coeff(0))).shifted(-1);
    PolyLst residual{p.a * fu.kappa, p.b * gv.kappa, c1.trimmed(tol)};
    return ReduceResult{{std::move(fu.constant), std::move(fu.linear)},
                        {std::move(gv.linear), std::move(gv.constant)},
                        std::move(residual),
                        std::move(fu.tilde),
                        std::move(gv.tilde)};
}

}  // namespace

ReduceResult reduce_00t(const PolyLst& p, const HermitianFunctional& u, const HermitianFunctional& v, int order,
                        const Tolerance& tol) {
    return reduce_impl(p, u, v, order, tol, false);
}

std::vector<ElementaryStep> decompose(const LstTriple& t, const HermitianFunctional& u, const HermitianFunctional& v,
                                      int order, const Tolerance& tol) {
    const Verification check = verify_lst(u, v, t, order, tol);
    if (check.verdict == Verdict::Fails) {
        throw Error(ErrorCode::VerificationFailed,
                    "the triple does not relate u and v (first failure at z^" + std::to_string(*check.first_failure) + ")");
    }
    PolyLst p = normalize(t);
    HermitianFunctional x = u, y = v;
    std::vector<ElementaryStep> prefix;
    // G-side steps, last in chain first.
    std::vector<ElementaryStep> suffix;
    while (true) {
        if (degree(p.a) >= 1) {
            SplitResult r = split_linear(p, Side::F, x, order, tol);
            prefix.push_back(std::move(r.step));
            p = std::move(r.residual);
            x = std::move(r.replacement);
        } else if (degree(p.b) >= 1) {
            SplitResult r = split_linear(p, Side::G, y, order, tol);
            suffix.push_back(std::move(r.step));
            p = std::move(r.residual);
            y = std::move(r.replacement);
        } else if (degree(p.c) >= 1) {
            ReduceResult r = reduce_impl(p, x, y, order, tol, true);
            for (auto& s : r.f_steps) prefix.push_back(std::move(s));
            for (auto it = r.g_steps.rbegin(); it != r.g_steps.rend(); ++it) suffix.push_back(std::move(*it));
            p = std::move(r.residual);
            x = std::move(r.u_tilde);
            y = std::move(r.v_tilde);
        } else {
            const Scalar alpha = p.a.coeff(0);
            const Scalar beta = p.b.coeff(0) / alpha;
            const Scalar c = p.c.coeff(0) / alpha;
            const bool identity = approx_equal(beta, Scalar(1), tol) && c.is_zero(tol);
            if (!identity || (prefix.empty() && suffix.empty())) {
                prefix.push_back(make_step(StepKind::C000, 1, beta, c, x, y, order));
            }
            break;
        }
    }
    for (auto it = suffix.rbegin(); it != suffix.rend(); ++it) prefix.push_back(std::move(*it));
    return prefix;
}

Recomposition recompose(const std::vector<ElementaryStep>& steps, int order, const Tolerance& tol) {
    Recomposition out;
    out.triple = make_triple(1, 1, 0, tol);
    out.verification = Verification{Verdict::Holds, std::nullopt, order, 0.0, true};
    if (steps.empty()) return out;
    for (std::size_t k = 0; k + 1 < steps.size(); ++k) {
        const PowerSeries& a = steps[k].output_cs;
        const PowerSeries& b = steps[k + 1].input_cs;
        const int n = std::min({a.order(), b.order(), order});
        if (!approx_equal(a.truncated(n), b.truncated(n), tol)) {
            throw Error(ErrorCode::ChainMismatch, "step " + std::to_string(k) + " output differs from step " +
                                                      std::to_string(k + 1) + " input");
        }
    }
    LaurentPolynomial a = 1, b = 1, c;
    bool exact = true;
    for (const ElementaryStep& s : steps) {
        c = (s.c * b + c * s.a).trimmed(tol);
        a = (a * s.a).trimmed(tol);
        b = (b * s.b).trimmed(tol);
        exact = exact && all_exact({&s.a, &s.b}) && s.c.is_exact() && s.input_cs[0].is_exact();
    }
    out.triple = make_triple(a, b, c, tol);
    const PowerSeries& f = steps.front().input_cs;
    const PowerSeries& g = steps.back().output_cs;
    const int n = std::min({f.order(), g.order(), order});
    const PowerSeries r = f.truncated(n) * a - g.truncated(n) * b + (-c);
    Verification& v = out.verification;
    v.order = n;
    v.exact = exact;
    for (int j = 0; j <= n; ++j) {
        v.max_residual = std::max(v.max_residual, r[j].abs());
        if (!r[j].is_zero(tol) && !v.first_failure) {
            v.verdict = Verdict::Fails;
            v.first_failure = j;
        }
    }
    return out;
}

RelationReport elementary_relation(const ElementaryStep& step, const HermitianFunctional& u,
                                   const HermitianFunctional& v, int order, const Tolerance& tol) {
    auto violation = [&](const std::string& what) {
        throw Error(ErrorCode::ConstraintViolation,
                    std::string(step_kind_name(step.kind)) + " step: " + what);
    };
    if (step.implied_kind() != step.kind) violation("coefficients do not have the shape of the kind");
    const bool exact = step.a.is_exact() && step.b.is_exact() && u.is_exact() && v.is_exact();
    const Scalar i = unit_i(exact);
    const Scalar half = exact ? Scalar(mpq_class(1, 2)) : Scalar::approx(0.5);
    const LaurentPolynomial& a = step.a;
    const LaurentPolynomial& b = step.b;
    const Scalar mu0 = u.cs(0)[0], nu0 = v.cs(0)[0];
    const HermitianFunctional u_hat = hat(u), v_hat = hat(v);

    // Each side: functional terms plus a leb part; `scalar` marks n = 0 rows
    // decided by the constant-term relation alone.
    std::vector<Term> lhs, general, pp, pp_star;
    LaurentPolynomial general_leb, pp_leb, pp_star_leb;
    int pp_last = -1;
    Scalar scalar_lhs, scalar_rhs;
    int w = order;
    switch (step.kind) {
        case StepKind::C000: {
            const Scalar alpha = a.coeff(0), beta = b.coeff(0);
            if (!alpha.is_real(tol)) violation("alpha must be real");
            const Scalar re_c = step.c.real_part();
            lhs = {{u, alpha}};
            general = {{v, beta.real_part()}, {v_hat, -beta.imag_part()}};
            general_leb = re_c;
            pp = {{v, beta}};
            pp_leb = LaurentPolynomial(-(nu0 * i * beta.imag_part()) + re_c);
            pp_star = {{v, beta.conj()}};
            pp_star_leb = LaurentPolynomial(nu0 * i * beta.imag_part() + re_c);
            pp_last = 0;
            w = relation_window(order, {{&u, &a}, {&v, &b}});
            break;
        }
        case StepKind::C01: {
            const Scalar alpha = a.coeff(0), beta0 = b.coeff(0), beta1 = b.coeff(1);
            if (!alpha.is_real(tol) || alpha.is_zero(tol)) violation("alpha must be real and nonzero");
            if (!beta0.is_real(tol)) violation("beta_0 must be real");
            const LaurentPolynomial plus = (b + b.star()) * half;
            const LaurentPolynomial minus = (b - b.star()) * (half / i);
            lhs = {{u, alpha}};
            general = {{v, plus}, {v_hat, -minus}};
            pp = {{v, b}};
            pp_leb = -(LaurentPolynomial(-1, {-beta1.conj(), 0, beta1}) * (half * nu0));
            pp_star = {{v, b.star()}};
            pp_star_leb = -(LaurentPolynomial(-1, {beta1.conj(), 0, beta1}) * (half * nu0));
            scalar_lhs = alpha * mu0;
            scalar_rhs = beta0 * nu0;
            w = relation_window(order, {{&u, &a}, {&v, &b}});
            break;
        }
        case StepKind::C10: {
            const Scalar beta = b.coeff(0), alpha0 = a.coeff(0), alpha1 = a.coeff(1);
            if (!beta.is_real(tol) || beta.is_zero(tol)) violation("beta must be real and nonzero");
            if (!alpha0.is_real(tol)) violation("alpha_0 must be real");
            const LaurentPolynomial plus = (a + a.star()) * half;
            const LaurentPolynomial minus = (a - a.star()) * (half / i);
            const LaurentPolynomial odd = LaurentPolynomial(-1, {-alpha1.conj(), 0, alpha1}) * (half * mu0);
            lhs = {{v, beta}};
            general = {{u, plus}, {u_hat, -minus}};
            pp = {{u, a}};
            pp_leb = -odd;
            pp_star = {{u, a.star()}};
            pp_star_leb = odd;
            scalar_lhs = beta * nu0;
            scalar_rhs = alpha0 * mu0;
            w = relation_window(order, {{&u, &a}, {&v, &b}});
            break;
        }
    }
    const int n_max = std::max(0, w - 1);
    const auto l = combined(lhs, {}, -n_max, n_max);
    const auto g = combined(general, general_leb, -n_max, n_max);
    const auto s_lo = combined(pp, pp_leb, -n_max, n_max);
    const auto s_hi = combined(pp_star, pp_star_leb, -n_max, n_max);
    RelationReport report;
    report.kind = step.kind;
    for (int e = -n_max; e <= n_max; ++e) {
        const int n = -e;
        const std::size_t j = static_cast<std::size_t>(n + n_max);
        RelationRow row;
        row.exponent = e;
        row.general = approx_equal(l[j], g[j], tol);
        if (n <= pp_last) {
            row.split_side = "PP";
            row.split = approx_equal(l[j], s_lo[j], tol);
        } else if (n >= 1) {
            row.split_side = "PP_*";
            row.split = approx_equal(l[j], s_hi[j], tol);
        } else {
            row.split_side = "scalar";
            row.split = approx_equal(scalar_lhs, scalar_rhs, tol);
        }
        report.all_hold = report.all_hold && row.general && row.split;
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::vector<std::complex<double>> approximate_roots(const LaurentPolynomial& p) {
    if (degree(p) < 1 || !p.is_polynomial()) {
        throw Error(ErrorCode::InvalidArgument, "root finding needs an ordinary polynomial of degree >= 1");
    }
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(p.min_exp()), 0.0);
    const LaurentPolynomial q = p.shifted(-p.min_exp());
    const int d = q.max_exp();
    if (d > 0) {
        Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
        const std::complex<double> lead = q.leading().to_complex();
        for (int k = 0; k < d; ++k) {
            if (k + 1 < d) companion(k + 1, k) = 1.0;
            companion(k, d - 1) = -q.coeff(k).to_complex() / lead;
        }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
        for (int k = 0; k < d; ++k) roots.push_back(solver.eigenvalues()[k]);
    }
    std::stable_sort(roots.begin(), roots.end(), [](auto x, auto y) {
        if (std::abs(std::abs(x) - std::abs(y)) > 1e-12) return std::abs(x) < std::abs(y);
        return std::arg(x) < std::arg(y);
    });
    return roots;
}

std::optional<Scalar> exact_root(const LaurentPolynomial& p) {
    if (degree(p) < 1 || !p.is_polynomial()) {
        throw Error(ErrorCode::InvalidArgument, "root finding needs an ordinary polynomial of degree >= 1");
    }
    if (p.min_exp() > 0) return Scalar(0);
    // Simple roots of the squarefree part are numerically well conditioned.
    const LaurentPolynomial squarefree = exact_divide(p, gcd(p, derivative(p)));
    if (degree(squarefree) < 1) return std::nullopt;
    for (const auto& z : approximate_roots(squarefree)) {
        auto re = reconstruct(z.real());
        auto im = reconstruct(z.imag());
        if (!re || !im) continue;
        const Scalar candidate(*re, *im);
        if (p.evaluate(candidate).is_exact_zero()) return candidate;
    }
    return std::nullopt;
}

}  // namespace mlst
