#include "moment_lst/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "moment_lst/errors.hpp"

namespace mlst {

namespace {

void check_stop(const std::stop_token& stop) {
    if (stop.stop_requested()) throw Error(ErrorCode::Cancelled, "verification cancelled");
}

LaurentPolynomial half(const LaurentPolynomial& p) { return p * Scalar(mpq_class(1, 2)); }

LaurentPolynomial divide(const LaurentPolynomial& a, const LaurentPolynomial& d, const Tolerance& tol) {
    if (a.is_exact() && d.is_exact()) return exact_divide(a, d, tol);
    return divmod(a, d, tol).quotient.trimmed(tol);
}

// Indices 0, 1, -1, 2, -2, ... up to |n| <= bound.
std::vector<int> search_order(int bound) {
    std::vector<int> out{0};
    for (int n = 1; n <= bound; ++n) {
        out.push_back(n);
        out.push_back(-n);
    }
    return out;
}

// Compares two moment lists indexed lo..lo+size-1.
Verification compare_moments(const std::vector<Scalar>& a, const std::vector<Scalar>& b, int bound, int order,
                             const Tolerance& tol, const std::stop_token& stop) {
    Verification out;
    out.order = order;
    out.verdict = Verdict::Holds;
    for (int n : search_order(bound)) {
        check_stop(stop);
        const Scalar& x = a[static_cast<std::size_t>(n + bound)];
        const Scalar& y = b[static_cast<std::size_t>(n + bound)];
        const double r = std::abs(x.to_complex() - y.to_complex());
        out.max_residual = std::max(out.max_residual, r);
        if (!approx_equal(x, y, tol) && !out.first_failure) {
            out.verdict = Verdict::Fails;
            out.first_failure = n;
        }
    }
    return out;
}

struct RationalPair {
    const RationalCS& f;
    const RationalCS& g;
};

std::optional<RationalPair> rational_pair(const HermitianFunctional& u, const HermitianFunctional& v) {
    if (u.rational() && v.rational()) return RationalPair{*u.rational(), *v.rational()};
    return std::nullopt;
}

// Numerator of F + F_* over Q Q_*.
LaurentPolynomial symmetric_part_numerator(const RationalCS& f) {
    return f.numerator() * f.denominator().star() + f.numerator().star() * f.denominator();
}

// F L - G M as a Laurent polynomial, if it is one.
std::optional<LaurentPolynomial> rm_remainder(const RationalPair& fg, const LaurentPolynomial& l,
                                              const LaurentPolynomial& m, const Tolerance& tol) {
    const auto& [f, g] = fg;
    const LaurentPolynomial x = f.numerator() * l * g.denominator() - g.numerator() * m * f.denominator();
    return RationalFunction{x, f.denominator() * g.denominator()}.as_polynomial(tol);
}

bool rm_identity(const RationalPair& fg, const LaurentPolynomial& l, const LaurentPolynomial& m, const Tolerance& tol) {
    if (!rm_remainder(fg, l, m, tol)) return false;
    const auto& [f, g] = fg;
    const LaurentPolynomial y =
        symmetric_part_numerator(f) * l * (g.denominator() * g.denominator().star()) -
        symmetric_part_numerator(g) * m * (f.denominator() * f.denominator().star());
    return y.trimmed(tol).is_zero();
}

bool exact_inputs(const HermitianFunctional& u, const HermitianFunctional& v, std::initializer_list<const LaurentPolynomial*> polys) {
    if (!u.is_exact() || !v.is_exact()) return false;
    return std::all_of(polys.begin(), polys.end(), [](const LaurentPolynomial* p) { return p->is_exact(); });
}

int low_exponent(std::initializer_list<const LaurentPolynomial*> polys) {
    int low = 0;
    bool any = false;
    for (const auto* p : polys) {
        if (p->is_zero()) continue;
        low = any ? std::min(low, p->min_exp()) : p->min_exp();
        any = true;
    }
    return low;
}

int high_exponent(std::initializer_list<const LaurentPolynomial*> polys) {
    int high = 0;
    bool any = false;
    for (const auto* p : polys) {
        if (p->is_zero()) continue;
        high = any ? std::max(high, p->max_exp()) : p->max_exp();
        any = true;
    }
    return high;
}

bool in_delta(const HermitianFunctional& u, const Tolerance& tol) { return delta_certificate(u, tol).has_value(); }

}  // namespace

LstTriple make_triple(LaurentPolynomial l, LaurentPolynomial m, LaurentPolynomial c, const Tolerance& tol) {
    LstTriple t{std::move(l), std::move(m), std::move(c), std::nullopt};
    if (t.l.is_zero() && t.m.is_zero()) return t;
    if (auto n = triple_symmetry(t.l, t.m, t.c, tol)) t.symmetry = Symmetry{-n->k, n->alpha};
    return t;
}

LstTriple reverse(const LstTriple& t) { return make_triple(t.m, t.l, -t.c); }

std::optional<UnitElement> unit_equivalent(const LstTriple& t, const LstTriple& s, const Tolerance& tol) {
    const LaurentPolynomial& a = !t.l.is_zero() ? t.l : t.m;
    const LaurentPolynomial& b = !t.l.is_zero() ? s.l : s.m;
    auto n = unit_ratio(a, b, tol);
    if (!n) return std::nullopt;
    const LaurentPolynomial unit = n->as_polynomial();
    if (!approx_equal(t.l, unit * s.l, tol) || !approx_equal(t.m, unit * s.m, tol) ||
        !approx_equal(t.c, unit * s.c, tol)) {
        return std::nullopt;
    }
    return n;
}

Verification verify_rm(const HermitianFunctional& u, const HermitianFunctional& v, const LaurentPolynomial& l,
                       const LaurentPolynomial& m, int order, const Tolerance& tol, std::stop_token stop) {
    if (l.is_zero() || m.is_zero()) throw Error(ErrorCode::InvalidArgument, "RM needs nonzero L and M");
    if (auto fg = rational_pair(u, v)) {
        Verification out;
        out.order = order;
        out.exact = exact_inputs(u, v, {&l, &m});
        if (rm_identity(*fg, l, m, tol)) {
            out.verdict = Verdict::Holds;
            return out;
        }
        // A nonzero difference shows up within the combined degree range.
        const int bound = order + l.span() + m.span() + fg->f.numerator().span() + fg->f.denominator().span() +
                          fg->g.numerator().span() + fg->g.denominator().span() + std::abs(l.min_exp()) +
                          std::abs(m.min_exp()) + 8;
        Verification found = compare_moments(act(u, l).moments(-bound, bound), act(v, m).moments(-bound, bound),
                                             bound, order, tol, stop);
        found.exact = out.exact;
        found.verdict = Verdict::Fails;
        return found;
    }
    const auto au = act(u, l);
    const auto av = act(v, m);
    int w = order;
    if (auto x = au.window()) w = std::min(w, *x);
    if (auto x = av.window()) w = std::min(w, *x);
    if (w < 0) return Verification{Verdict::Unknown, std::nullopt, order, 0.0, false};
    Verification out = compare_moments(au.moments(-w, w), av.moments(-w, w), w, w, tol, stop);
    return out;
}

Verification verify_lst(const HermitianFunctional& u, const HermitianFunctional& v, const LstTriple& t, int order,
                        const Tolerance& tol, std::stop_token stop) {
    if (t.l.is_zero() || t.m.is_zero()) throw Error(ErrorCode::InvalidArgument, "LST needs nonzero L and M");
    Verification out;
    out.order = order;
    if (auto fg = rational_pair(u, v)) {
        const auto& [f, g] = *fg;
        const LaurentPolynomial den = f.denominator() * g.denominator();
        const LaurentPolynomial x =
            (f.numerator() * t.l * g.denominator() - g.numerator() * t.m * f.denominator() - t.c * den).trimmed(tol);
        out.exact = exact_inputs(u, v, {&t.l, &t.m, &t.c});
        if (x.is_zero()) {
            out.verdict = Verdict::Holds;
            return out;
        }
        out.verdict = Verdict::Fails;
        out.first_failure = x.min_exp();
        out.max_residual = (x.trailing() / den.coeff(0)).abs();
        return out;
    }
    const int s = low_exponent({&t.l, &t.m, &t.c});
    const LaurentPolynomial l = t.l.shifted(-s), m = t.m.shifted(-s), c = t.c.shifted(-s);
    int w = order;
    if (auto x = u.window()) w = std::min(w, *x);
    if (auto x = v.window()) w = std::min(w, *x);
    if (w < 0) return Verification{Verdict::Unknown, std::nullopt, order, 0.0, false};
    const PowerSeries r = u.cs(w) * l - v.cs(w) * m + (-c);
    out.verdict = Verdict::Holds;
    out.order = w;
    for (int j = 0; j <= w; ++j) {
        check_stop(stop);
        const double res = r[j].abs();
        out.max_residual = std::max(out.max_residual, res);
        if (!r[j].is_zero(tol) && !out.first_failure) {
            out.verdict = Verdict::Fails;
            out.first_failure = j + s;
        }
    }
    return out;
}

LstTriple rm_to_lst(const HermitianFunctional& u, const HermitianFunctional& v, const LaurentPolynomial& l,
                    const LaurentPolynomial& m, int order, const Tolerance& tol) {
    const Verification check = verify_rm(u, v, l, m, order, tol);
    if (!check.holds()) {
        throw Error(ErrorCode::NotAnRM, "u*(" + l.to_string() + ") != v*(" + m.to_string() + ")" +
                                            (check.first_failure ? " at moment " + std::to_string(*check.first_failure) : ""));
    }
    if (auto fg = rational_pair(u, v)) return make_triple(l, m, *rm_remainder(*fg, l, m, tol), tol);
    // C lies in the exponent range spanned by L and M.
    const int s = low_exponent({&l, &m});
    const int q = high_exponent({&l, &m});
    const int need = q - s;
    const PowerSeries r = u.cs(need) * l.shifted(-s) - v.cs(need) * m.shifted(-s);
    std::vector<Scalar> c(r.coeffs().begin(), r.coeffs().begin() + need + 1);
    return make_triple(l, m, LaurentPolynomial(s, std::move(c)).trimmed(tol), tol);
}

std::optional<DeltaCertificate> delta_certificate(const HermitianFunctional& u, const Tolerance& tol) {
    const RationalCS* f = u.rational();
    if (!f) {
        if (u.rat_status() == RatStatus::NonRational) return std::nullopt;
        throw Error(ErrorCode::Unsupported, "membership of " + u.label() + " in the annihilated class is undecidable");
    }
    if (!symmetric_part_numerator(*f).trimmed(tol).is_zero()) return std::nullopt;
    auto norm = self_reciprocal_normalize(f->denominator(), tol);
    if (!norm) throw Error(ErrorCode::VerificationFailed, "denominator of " + u.label() + " is not self-reciprocal");
    DeltaCertificate cert{norm->first, (f->numerator() * norm->second).trimmed(tol)};
    const int q = cert.q.max_exp();
    if (!approx_equal(cert.p.star_p(q), -cert.p, tol) || gcd(cert.p, cert.q, tol).span() != 0) {
        throw Error(ErrorCode::VerificationFailed, "annihilator certificate for " + u.label() + " failed its checks");
    }
    return cert;
}

std::pair<LaurentPolynomial, LaurentPolynomial> rat_to_leb_rm(const HermitianFunctional& u, const Tolerance& tol) {
    const RationalCS* f = u.rational();
    if (!f) throw Error(ErrorCode::Unsupported, u.label() + " has no rational Carathéodory function");
    const LaurentPolynomial& q = f->denominator();
    const LaurentPolynomial both = lcm(q, q.star_p(q.max_exp()), tol);
    auto norm = self_reciprocal_normalize(both, tol);
    if (!norm) throw Error(ErrorCode::VerificationFailed, "lcm(Q, Q*) is not self-reciprocal");
    const LaurentPolynomial& qs = norm->first;
    const LaurentPolynomial p = divide(f->numerator() * qs, q, tol);
    const int deg = qs.max_exp();
    LaurentPolynomial m = half(p + p.star_p(deg)).trimmed(tol);
    if (!m.is_zero() && !verify_rm(u, leb(), qs, m, kDefaultOrder, tol).holds()) {
        throw Error(ErrorCode::VerificationFailed, "u Q = leb M check failed for " + u.label());
    }
    return {qs, m};
}

LstTriple minimize_lst(const LstTriple& t, const Tolerance& tol) {
    const std::vector<LaurentPolynomial> parts{t.l, t.m, t.c};
    const LaurentPolynomial g = gcd(parts, tol);
    return make_triple(divide(t.l, g, tol), divide(t.m, g, tol), divide(t.c, g, tol), tol);
}

std::pair<LaurentPolynomial, LaurentPolynomial> minimize_rm(const HermitianFunctional& u,
                                                            const HermitianFunctional& v, const LaurentPolynomial& l,
                                                            const LaurentPolynomial& m, int order,
                                                            const Tolerance& tol) {
    if (in_delta(u, tol) || in_delta(v, tol)) {
        throw Error(ErrorCode::DeltaAmbiguity, "minimal RM pairs are not unique for annihilated functionals");
    }
    const LstTriple t = rm_to_lst(u, v, l, m, order, tol);
    const std::vector<LaurentPolynomial> parts{t.l, t.m, t.c};
    const LaurentPolynomial g = gcd(parts, tol);
    const auto sym = self_reciprocal_normalize(g, tol);
    const LaurentPolynomial& rep = sym ? sym->first : g;
    LaurentPolynomial l0 = divide(l, rep, tol);
    LaurentPolynomial m0 = divide(m, rep, tol);
    if (l0.is_monomial()) {
        m0 = divide(m0, l0, tol);
        l0 = LaurentPolynomial(l0.is_exact() ? Scalar(1) : Scalar::approx(1.0));
    }
    if (!verify_rm(u, v, l0, m0, order, tol).holds()) {
        throw Error(ErrorCode::VerificationFailed, "reduced pair does not preserve the RM");
    }
    return {l0, m0};
}

std::string_view class_tag_name(ClassTag tag) noexcept {
    switch (tag) {
        case ClassTag::FromRM: return "from_rm";
        case ClassTag::Wild: return "wild";
        case ClassTag::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Classification classify(const HermitianFunctional& u, const HermitianFunctional& v, const LstTriple& t, int order,
                        const Tolerance& tol) {
    const Verification check = verify_lst(u, v, t, order, tol);
    if (check.verdict == Verdict::Fails) {
        throw Error(ErrorCode::VerificationFailed,
                    "F L != G M + C at exponent " + std::to_string(check.first_failure.value_or(0)));
    }
    Classification out;
    out.minimal = minimize_lst(t, tol);
    out.unit = triple_symmetry(out.minimal.l, out.minimal.m, out.minimal.c, tol);
    if (check.verdict == Verdict::Unknown) {
        out.reason = "no moments available to verify the LST";
        return out;
    }
    if (auto fg = rational_pair(u, v)) {
        const bool du = in_delta(u, tol);
        const bool dv = in_delta(v, tol);
        try {
            out.witness = rat_nonuniqueness_witness(u, v, out.minimal, tol);
        } catch (const Error&) {
            out.witness.reset();
        }
        if (du != dv) {
            out.tag = ClassTag::Wild;
            out.reason = "exactly one functional is annihilated by a Laurent polynomial; an RM would force both";
            return out;
        }
        if (out.unit && verify_rm(u, v, out.minimal.l, out.minimal.m, order, tol).holds()) {
            out.tag = ClassTag::FromRM;
            out.rm = std::make_pair(out.minimal.l, out.minimal.m);
            out.reason = "minimal triple is symmetric";
            return out;
        }
        if (du) {
            const auto cu = delta_certificate(u, tol);
            const auto cv = delta_certificate(v, tol);
            const LaurentPolynomial both = cu->q * cv->q;
            out.tag = ClassTag::FromRM;
            out.rm = std::make_pair(both, both);
            out.reason = "both functionals are annihilated by " + both.to_string();
            return out;
        }
        out.tag = ClassTag::FromRM;
        out.rm = find_rm(u, v, tol);
        out.reason = "rational pair related through leb";
        return out;
    }
    const bool unknown = u.rat_status() == RatStatus::Unknown || v.rat_status() == RatStatus::Unknown;
    if (out.unit) {
        const Verification rm = verify_rm(u, v, out.minimal.l, out.minimal.m, order, tol);
        if (rm.holds()) {
            out.tag = unknown ? ClassTag::Inconclusive : ClassTag::FromRM;
            out.rm = std::make_pair(out.minimal.l, out.minimal.m);
            out.reason = unknown ? "symmetric minimal triple; moments agree only on a finite window"
                                 : "minimal triple is symmetric";
            return out;
        }
    }
    if (unknown) {
        out.reason = "minimal LST is unique only for non-rational functionals; rationality is not known";
        return out;
    }
    out.tag = ClassTag::Wild;
    out.reason = "non-rational pair: the minimal LST is unique up to units and violates the symmetry conditions";
    return out;
}

HermitianFunctional apply_lst(const HermitianFunctional& v, const LstTriple& t, const Tolerance& tol) {
    return lst_image(v, t.l, t.m, t.c, tol);
}

GeneralDecomposition decompose_general(const HermitianFunctional& u, const HermitianFunctional& v, const LstTriple& t,
                                       int order, const Tolerance& tol) {
    if (t.l.is_zero()) throw Error(ErrorCode::InvalidArgument, "decomposition needs L != 0");
    GeneralDecomposition out;
    const auto sym = is_symmetric(t.l, tol);
    if (sym && approx_equal(sym->alpha * sym->alpha.conj(), Scalar(1), tol)) {
        const Scalar beta = symmetrizing_factor(sym->alpha, tol);
        out.symmetrized = make_triple(t.l * beta, t.m * beta, t.c * beta, tol);
    } else {
        const LaurentPolynomial s = t.l.star();
        out.symmetrized = make_triple(t.l * s, t.m * s, t.c * s, tol);
    }
    const LstTriple& st = out.symmetrized;
    out.p = st.l.min_exp() + st.l.max_exp();
    const int p = out.p;
    const bool exact = st.l.is_exact() && st.m.is_exact() && st.c.is_exact();
    const Scalar inv_2i = exact ? Scalar(0, mpq_class(-1, 2)) : Scalar::approx(0.0, -0.5);
    out.m_plus = half(st.m + st.m.star_p(p)).trimmed(tol);
    out.m_minus = ((st.m - st.m.star_p(p)) * inv_2i).trimmed(tol);
    out.c_plus = half(st.c + st.c.star_p(p)).trimmed(tol);
    out.c_minus = ((st.c - st.c.star_p(p)) * inv_2i).trimmed(tol);

    const HermitianFunctional uh = hat(u);
    const HermitianFunctional vh = hat(v);
    const HermitianFunctional lb = leb();
    const Scalar one(1);
    const std::vector<std::pair<Scalar, ActedFunctional>> lhs_terms{{one, act(u, st.l)}};
    const std::vector<std::pair<Scalar, ActedFunctional>> rhs_terms{
        {one, act(v, out.m_plus)}, {-one, act(vh, out.m_minus)}, {one, act(lb, out.c_plus)}};
    const std::vector<std::pair<Scalar, ActedFunctional>> lhs_hat_terms{{one, act(uh, st.l)}};
    const std::vector<std::pair<Scalar, ActedFunctional>> rhs_hat_terms{
        {one, act(v, out.m_minus)}, {one, act(vh, out.m_plus)}, {one, act(lb, out.c_minus)}};
    int w = order;
    for (const auto* terms : {&lhs_terms, &rhs_terms, &lhs_hat_terms, &rhs_hat_terms}) {
        for (const auto& term : *terms) {
            if (auto x = term.second.window()) w = std::min(w, *x);
        }
    }
    if (w < 0) throw Error(ErrorCode::OutOfWindow, "not enough moments to verify the decomposition");
    auto combo = [w](const std::vector<std::pair<Scalar, ActedFunctional>>& terms) {
        std::vector<Scalar> acc(static_cast<std::size_t>(2 * w + 1));
        for (const auto& [c, a] : terms) {
            const auto ms = a.moments(-w, w);
            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += c * ms[k];
        }
        return acc;
    };
    out.identity = compare_moments(combo(lhs_terms), combo(rhs_terms), w, w, tol, {});
    out.hat_identity = compare_moments(combo(lhs_hat_terms), combo(rhs_hat_terms), w, w, tol, {});
    out.identity.exact = out.hat_identity.exact = exact && u.is_exact() && v.is_exact();
    if (!out.identity.holds() || !out.hat_identity.holds()) {
        const auto& bad = out.identity.holds() ? out.hat_identity : out.identity;
        throw Error(ErrorCode::VerificationFailed,
                    std::string(out.identity.holds() ? "hat identity" : "identity") + " fails at moment " +
                        std::to_string(bad.first_failure.value_or(0)));
    }
    return out;
}

LstTriple find_lst(const HermitianFunctional& u, const HermitianFunctional& v, const Tolerance& tol) {
    auto fg = rational_pair(u, v);
    if (!fg) throw Error(ErrorCode::Unsupported, "find_lst needs rational Carathéodory functions");
    const auto& [f, g] = *fg;
    const LaurentPolynomial l = lcm(f.denominator(), g.denominator(), tol);
    const LaurentPolynomial c = f.numerator() * divide(l, f.denominator(), tol) -
                                g.numerator() * divide(l, g.denominator(), tol);
    LstTriple t = minimize_lst(make_triple(l, l, c.trimmed(tol), tol), tol);
    if (!verify_lst(u, v, t, kDefaultOrder, tol).holds()) {
        throw Error(ErrorCode::VerificationFailed, "constructed LST does not verify");
    }
    return t;
}

LstTriple rat_nonuniqueness_witness(const HermitianFunctional& u, const HermitianFunctional& v, const LstTriple& t,
                                    const Tolerance& tol) {
    auto fg = rational_pair(u, v);
    if (!fg) throw Error(ErrorCode::Unsupported, "non-uniqueness witness needs rational functionals");
    if (!verify_lst(u, v, t, kDefaultOrder, tol).holds()) {
        throw Error(ErrorCode::VerificationFailed, "input triple is not an LST between u and v");
    }
    const RationalCS& g = fg->g;
    // S with G S = R a Laurent polynomial: M itself when possible.
    LaurentPolynomial s = t.m;
    auto r = RationalFunction{g.numerator() * t.m, g.denominator()}.as_polynomial(tol);
    if (!r) {
        s = g.denominator();
        r = g.numerator();
    }
    const LstTriple base = minimize_lst(t, tol);
    for (int k = 1; k <= 8; ++k) {
        const Scalar ks(k);
        LstTriple w = minimize_lst(make_triple(t.l, t.m + s * ks, (t.c - *r * ks).trimmed(tol), tol), tol);
        if (w.m.is_zero() || unit_equivalent(w, base, tol)) continue;
        if (!verify_lst(u, v, w, kDefaultOrder, tol).holds()) {
            throw Error(ErrorCode::VerificationFailed, "witness triple does not verify");
        }
        return w;
    }
    throw Error(ErrorCode::VerificationFailed, "no second minimal LST found");
}

std::pair<LaurentPolynomial, LaurentPolynomial> find_rm(const HermitianFunctional& u, const HermitianFunctional& v,
                                                        const Tolerance& tol) {
    if (!rational_pair(u, v)) throw Error(ErrorCode::Unsupported, "find_rm needs rational Carathéodory functions");
    if (in_delta(u, tol) || in_delta(v, tol)) {
        throw Error(ErrorCode::DeltaAmbiguity, "RM pairs are not unique for annihilated functionals");
    }
    const auto [q1, m1] = rat_to_leb_rm(u, tol);
    const auto [q2, m2] = rat_to_leb_rm(v, tol);
    return minimize_rm(u, v, q1 * m2, q2 * m1, kDefaultOrder, tol);
}

}  // namespace mlst
