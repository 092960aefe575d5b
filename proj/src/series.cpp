#include "moment_lst/series.hpp"

#include <algorithm>

#include "moment_lst/errors.hpp"

namespace mlst {

PowerSeries::PowerSeries(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "power series needs order >= 0");
}

PowerSeries PowerSeries::truncated(int order) const {
    order = std::min(order, this->order());
    return PowerSeries(std::vector<Scalar>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

PowerSeries PowerSeries::conj_coeffs() const {
    std::vector<Scalar> out = coeffs_;
    for (auto& c : out) c = c.conj();
    return PowerSeries(std::move(out));
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<Scalar> out(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) out[k] = a[k] + b[k];
    return PowerSeries(std::move(out));
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + b * Scalar(-1); }

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<Scalar> out(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        if (a[i].is_exact_zero()) continue;
        for (int j = 0; i + j <= n; ++j) out[i + j] += a[i] * b[j];
    }
    return PowerSeries(std::move(out));
}

PowerSeries operator*(const PowerSeries& a, const Scalar& s) {
    std::vector<Scalar> out = a.coeffs_;
    for (auto& c : out) c *= s;
    return PowerSeries(std::move(out));
}

PowerSeries operator*(const PowerSeries& a, const LaurentPolynomial& p) {
    if (!p.is_polynomial()) throw Error(ErrorCode::InvalidArgument, "series times a polynomial with negative exponents");
    const int n = a.order();
    std::vector<Scalar> out(static_cast<std::size_t>(n + 1));
    if (p.is_zero()) return PowerSeries(std::move(out));
    for (int j = p.min_exp(); j <= std::min(p.max_exp(), n); ++j) {
        const Scalar pj = p.coeff(j);
        if (pj.is_exact_zero()) continue;
        for (int i = 0; i + j <= n; ++i) out[i + j] += a[i] * pj;
    }
    return PowerSeries(std::move(out));
}

PowerSeries operator+(const PowerSeries& a, const LaurentPolynomial& p) {
    if (!p.is_polynomial()) throw Error(ErrorCode::InvalidArgument, "series plus a polynomial with negative exponents");
    std::vector<Scalar> out = a.coeffs_;
    for (int j = 0; !p.is_zero() && j <= std::min(p.max_exp(), a.order()); ++j) out[j] += p.coeff(j);
    return PowerSeries(std::move(out));
}

std::optional<int> PowerSeries::first_nonzero(const Tolerance& tol) const {
    for (int k = 0; k <= order(); ++k) {
        if (!coeffs_[k].is_zero(tol)) return k;
    }
    return std::nullopt;
}

bool approx_equal(const PowerSeries& a, const PowerSeries& b, const Tolerance& tol) {
    const int n = std::min(a.order(), b.order());
    for (int k = 0; k <= n; ++k) {
        if (!approx_equal(a[k], b[k], tol)) return false;
    }
    return true;
}

namespace {

LaurentPolynomial divide_out(const LaurentPolynomial& a, const LaurentPolynomial& g, const Tolerance& tol) {
    auto [q, r] = divmod(a, g, tol);
    if (!r.is_zero() && a.is_exact() && g.is_exact()) {
        throw Error(ErrorCode::InvalidArgument, "gcd does not divide " + a.to_string());
    }
    return q;
}

}  // namespace

RationalCS::RationalCS(const LaurentPolynomial& p, const LaurentPolynomial& q, const Tolerance& tol) {
    if (q.trimmed(tol).is_zero()) throw Error(ErrorCode::DivisionByZero, "rational CS with zero denominator");
    LaurentPolynomial num = p.trimmed(tol);
    LaurentPolynomial den = q.trimmed(tol);
    if (num.is_zero()) {
        p_ = LaurentPolynomial();
        q_ = LaurentPolynomial(1);
        return;
    }
    // Strip the common power of z, then require no pole at the origin.
    const int shift = std::min(num.min_exp(), den.min_exp());
    num = num.shifted(-shift);
    den = den.shifted(-shift);
    if (den.min_exp() > 0) {
        throw Error(ErrorCode::NotAnalytic, "(" + p.to_string() + ")/(" + q.to_string() + ") has a pole at z = 0");
    }
    const LaurentPolynomial g = gcd(num, den, tol);
    if (g.span() > 0) {
        num = divide_out(num, g, tol);
        den = divide_out(den, g, tol);
    }
    const Scalar lead = Scalar(1) / den.leading();
    p_ = (num * lead).trimmed(tol);
    q_ = (den * lead).trimmed(tol);
    if (!constant_term().is_real(tol)) {
        throw Error(ErrorCode::HermiticityViolation,
                    "constant term " + constant_term().to_string() + " of a Carathéodory function must be real");
    }
}

RationalCS operator+(const RationalCS& a, const RationalCS& b) {
    return RationalCS(a.p_ * b.q_ + b.p_ * a.q_, a.q_ * b.q_);
}

RationalCS operator*(const RationalCS& a, const Scalar& s) { return RationalCS(a.p_ * s, a.q_); }

PowerSeries expand(const RationalCS& r, int n) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "expansion order must be >= 0");
    const auto& p = r.numerator();
    const auto& q = r.denominator();
    const Scalar q0 = q.coeff(0);
    std::vector<Scalar> c(static_cast<std::size_t>(n + 1));
    const int dq = q.max_exp();
    for (int k = 0; k <= n; ++k) {
        Scalar acc = p.coeff(k);
        for (int j = 1; j <= std::min(k, dq); ++j) {
            const Scalar qj = q.coeff(j);
            if (!qj.is_exact_zero()) acc -= qj * c[k - j];
        }
        c[k] = acc / q0;
    }
    return PowerSeries(std::move(c));
}

PowerSeries cs_from_moments(const std::function<Scalar(int)>& moment, int n, const Tolerance& tol) {
    std::vector<Scalar> c(static_cast<std::size_t>(n + 1));
    c[0] = moment(0);
    if (!c[0].is_real(tol)) {
        throw Error(ErrorCode::HermiticityViolation, "mu_0 = " + c[0].to_string() + " is not real");
    }
    for (int k = 1; k <= n; ++k) c[k] = Scalar(2) * moment(-k);
    return PowerSeries(std::move(c));
}

Scalar LaurentSeries::coefficient(int n) const {
    if (std::abs(n) > cs_.order()) {
        throw Error(ErrorCode::OutOfWindow, "Laurent series coefficient " + std::to_string(n) + " beyond order " +
                                                std::to_string(cs_.order()));
    }
    if (n == 0) return cs_[0];
    if (n > 0) return cs_[n] / Scalar(2);
    return cs_[-n].conj() / Scalar(2);
}

LaurentSeries ls_from_cs(const PowerSeries& f) { return LaurentSeries(f); }

LaurentSeries ls_from_cs(const RationalCS& f, int n) { return LaurentSeries(expand(f, n)); }

PowerSeries divide_by_laurent(const PowerSeries& s, const LaurentPolynomial& l, const Tolerance& tol) {
    if (l.trimmed(tol).is_zero()) throw Error(ErrorCode::DivisionByZero, "series division by the zero polynomial");
    const LaurentPolynomial lt = l.trimmed(tol);
    const int k = lt.min_exp();
    const LaurentPolynomial base = lt.shifted(-k);
    std::vector<Scalar> num;
    if (k >= 0) {
        for (int j = 0; j < k && j <= s.order(); ++j) {
            if (!s[j].is_zero(tol)) {
                throw Error(ErrorCode::NotAnalytic, "quotient by " + l.to_string() + " has a term z^" +
                                                        std::to_string(j - k));
            }
        }
        if (k > s.order()) throw Error(ErrorCode::OutOfWindow, "series order too small for division by " + l.to_string());
        num.assign(s.coeffs().begin() + k, s.coeffs().end());
    } else {
        num.assign(static_cast<std::size_t>(-k), Scalar(0));
        num.insert(num.end(), s.coeffs().begin(), s.coeffs().end());
    }
    const int n = static_cast<int>(num.size()) - 1;
    const Scalar b0 = base.coeff(0);
    const int db = base.max_exp();
    std::vector<Scalar> t(num.size());
    for (int i = 0; i <= n; ++i) {
        Scalar acc = num[i];
        for (int j = 1; j <= std::min(i, db); ++j) {
            const Scalar bj = base.coeff(j);
            if (!bj.is_exact_zero()) acc -= bj * t[i - j];
        }
        t[i] = acc / b0;
    }
    return PowerSeries(std::move(t));
}

std::optional<LaurentPolynomial> RationalFunction::as_polynomial(const Tolerance& tol) const {
    if (num.trimmed(tol).is_zero()) return LaurentPolynomial();
    auto [q, r] = divmod(num, den, tol);
    if (!r.trimmed(tol).is_zero()) return std::nullopt;
    return q.trimmed(tol);
}

}  // namespace mlst
