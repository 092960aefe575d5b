#include "moment_lst/laurent.hpp"

#include <algorithm>
#include <cmath>

#include "moment_lst/errors.hpp"

namespace mlst {

LaurentPolynomial::LaurentPolynomial(const Scalar& c) : min_exp_(0), coeffs_{c} { normalize(); }

LaurentPolynomial::LaurentPolynomial(int min_exp, std::vector<Scalar> coeffs)
    : min_exp_(min_exp), coeffs_(std::move(coeffs)) {
    normalize();
}

LaurentPolynomial LaurentPolynomial::monomial(const Scalar& c, int k) { return LaurentPolynomial(k, {c}); }

void LaurentPolynomial::normalize() {
    auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Scalar& s) { return !s.is_exact_zero(); });
    if (first == coeffs_.end()) {
        coeffs_.clear();
        min_exp_ = 0;
        return;
    }
    min_exp_ += static_cast<int>(first - coeffs_.begin());
    coeffs_.erase(coeffs_.begin(), first);
    while (coeffs_.back().is_exact_zero()) coeffs_.pop_back();
}

bool LaurentPolynomial::is_exact() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& s) { return s.is_exact(); });
}

Scalar LaurentPolynomial::coeff(int k) const {
    if (is_zero() || k < min_exp_ || k > max_exp()) return Scalar(0);
    return coeffs_[static_cast<std::size_t>(k - min_exp_)];
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& rhs) {
    if (rhs.is_zero()) return *this;
    if (is_zero()) return *this = rhs;
    const int lo = std::min(min_exp_, rhs.min_exp_);
    const int hi = std::max(max_exp(), rhs.max_exp());
    std::vector<Scalar> out(static_cast<std::size_t>(hi - lo + 1));
    for (int k = min_exp_; k <= max_exp(); ++k) out[k - lo] = coeffs_[k - min_exp_];
    for (int k = rhs.min_exp_; k <= rhs.max_exp(); ++k) out[k - lo] += rhs.coeffs_[k - rhs.min_exp_];
    min_exp_ = lo;
    coeffs_ = std::move(out);
    normalize();
    return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& rhs) { return *this += -rhs; }

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_exact_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return LaurentPolynomial(a.min_exp_ + b.min_exp_, std::move(out));
}

LaurentPolynomial& LaurentPolynomial::operator*=(const LaurentPolynomial& rhs) { return *this = *this * rhs; }

LaurentPolynomial& LaurentPolynomial::operator*=(const Scalar& s) {
    for (auto& c : coeffs_) c *= s;
    normalize();
    return *this;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
    LaurentPolynomial out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.min_exp_ == b.min_exp_ && a.coeffs_ == b.coeffs_;
}

LaurentPolynomial LaurentPolynomial::shifted(int k) const {
    LaurentPolynomial out = *this;
    if (!out.is_zero()) out.min_exp_ += k;
    return out;
}

LaurentPolynomial LaurentPolynomial::star() const {
    if (is_zero()) return {};
    std::vector<Scalar> out(coeffs_.rbegin(), coeffs_.rend());
    for (auto& c : out) c = c.conj();
    return LaurentPolynomial(-max_exp(), std::move(out));
}

LaurentPolynomial LaurentPolynomial::trimmed(const Tolerance& tol) const {
    LaurentPolynomial out = *this;
    for (auto& c : out.coeffs_) {
        if (!c.is_exact() && c.is_zero(tol)) c = Scalar(0);
    }
    out.normalize();
    return out;
}

LaurentPolynomial LaurentPolynomial::to_approx() const {
    LaurentPolynomial out = *this;
    for (auto& c : out.coeffs_) c = c.to_approx();
    return out;
}

std::complex<double> LaurentPolynomial::evaluate(std::complex<double> z) const {
    std::complex<double> acc = 0.0;
    for (int k = max_exp(); k >= min_exp_ && !is_zero(); --k) acc = acc * z + coeffs_[k - min_exp_].to_complex();
    return is_zero() ? acc : acc * std::pow(z, min_exp_);
}

Scalar LaurentPolynomial::evaluate(const Scalar& z) const {
    if (is_zero()) return Scalar(0);
    Scalar acc(0);
    for (int k = max_exp(); k >= min_exp_; --k) acc = acc * z + coeffs_[k - min_exp_];
    return acc * pow(z, min_exp_);
}

namespace {

bool needs_parens(const Scalar& c) {
    if (c.is_exact()) return sgn(c.exact_value().re) != 0 && sgn(c.exact_value().im) != 0;
    const auto z = c.to_complex();
    return z.real() != 0.0 && z.imag() != 0.0;
}

std::string term_text(const Scalar& c, int k) {
    if (k == 0) {
        return needs_parens(c) ? "(" + c.to_string() + ")" : c.to_string();
    }
    std::string z = k == 1 ? "z" : "z^" + std::to_string(k);
    if (c == Scalar(1)) return z;
    if (c == Scalar(-1)) return "-" + z;
    if (needs_parens(c)) return "(" + c.to_string() + ")*" + z;
    return c.to_string() + "*" + z;
}

}  // namespace

std::string LaurentPolynomial::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = min_exp_; k <= max_exp(); ++k) {
        const Scalar& c = coeffs_[k - min_exp_];
        if (c.is_exact_zero()) continue;
        std::string t = term_text(c, k);
        if (out.empty()) {
            out = t;
        } else if (t[0] == '-') {
            out += " - " + t.substr(1);
        } else {
            out += " + " + t;
        }
    }
    return out;
}

bool approx_equal(const LaurentPolynomial& a, const LaurentPolynomial& b, const Tolerance& tol) {
    if (a.is_exact() && b.is_exact()) return a == b;
    return (a - b).trimmed(tol).is_zero();
}

LaurentPolynomial pow(const LaurentPolynomial& p, int k) {
    if (k < 0) {
        if (!p.is_monomial()) throw Error(ErrorCode::InvalidArgument, "negative power of a non-unit");
        return LaurentPolynomial::monomial(pow(p.leading(), k), p.min_exp() * k);
    }
    LaurentPolynomial result(1);
    LaurentPolynomial base = p;
    while (k > 0) {
        if (k & 1) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

namespace {

double max_abs(const std::vector<Scalar>& v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, c.abs());
    return m;
}

// Long division of ordinary polynomials given as ascending coefficient
// vectors; divisor has a nonzero leading entry.
std::pair<std::vector<Scalar>, std::vector<Scalar>> poly_divmod(std::vector<Scalar> a, const std::vector<Scalar>& d,
                                                                const Tolerance& tol) {
    const std::size_t n = a.size();
    const std::size_t m = d.size();
    if (n < m) return {{}, std::move(a)};
    const bool exact = std::all_of(a.begin(), a.end(), [](const Scalar& s) { return s.is_exact(); }) &&
                       std::all_of(d.begin(), d.end(), [](const Scalar& s) { return s.is_exact(); });
    std::vector<Scalar> q(n - m + 1);
    const Scalar lead = d.back();
    for (std::size_t shift = n - m + 1; shift-- > 0;) {
        const std::size_t top = shift + m - 1;
        Scalar coef = a[top] / lead;
        if (!coef.is_exact_zero()) {
            for (std::size_t j = 0; j < m; ++j) a[shift + j] -= coef * d[j];
        }
        a[top] = exact ? Scalar(0) : Scalar::approx(0.0);
        q[shift] = std::move(coef);
    }
    a.resize(m - 1);
    if (!exact) {
        const double scale = std::max(1.0, max_abs(d)) * std::max(1.0, std::abs(q.empty() ? 1.0 : max_abs(q)));
        for (auto& c : a) {
            if (c.abs() <= tol.eps * scale) c = Scalar::approx(0.0);
        }
    }
    return {std::move(q), std::move(a)};
}

std::vector<Scalar> dense(const LaurentPolynomial& p) { return p.coeffs(); }

}  // namespace

DivMod divmod(const LaurentPolynomial& a, const LaurentPolynomial& d, const Tolerance& tol) {
    if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "divmod by the zero polynomial");
    if (a.is_zero()) return {};
    auto [q, r] = poly_divmod(dense(a), dense(d), tol);
    LaurentPolynomial quotient(a.min_exp() - d.min_exp(), std::move(q));
    LaurentPolynomial remainder(a.min_exp(), std::move(r));
    return {quotient, remainder.trimmed(tol)};
}

LaurentPolynomial exact_divide(const LaurentPolynomial& a, const LaurentPolynomial& d, const Tolerance& tol) {
    auto [q, r] = divmod(a, d, tol);
    if (!r.is_zero()) throw Error(ErrorCode::InvalidArgument, "inexact division: " + a.to_string() + " by " + d.to_string());
    return q;
}

LaurentPolynomial canonical(const LaurentPolynomial& p) {
    if (p.is_zero()) return p;
    LaurentPolynomial out = p.shifted(-p.min_exp());
    return out * (Scalar(1) / out.leading());
}

LaurentPolynomial gcd(std::span<const LaurentPolynomial> polys, const Tolerance& tol) {
    std::optional<LaurentPolynomial> acc;
    for (const auto& p : polys) {
        if (p.is_zero()) continue;
        if (!acc) {
            acc = canonical(p);
            continue;
        }
        LaurentPolynomial a = *acc;
        LaurentPolynomial b = canonical(p);
        if (b.span() > a.span()) std::swap(a, b);
        while (!b.is_zero()) {
            LaurentPolynomial r = divmod(a, b, tol).remainder;
            a = std::move(b);
            b = r.is_zero() ? r : canonical(r);
        }
        acc = canonical(a);
        if (acc->span() == 0) break;
    }
    if (!acc) throw Error(ErrorCode::AllZero, "gcd of all-zero list");
    return *acc;
}

LaurentPolynomial gcd(const LaurentPolynomial& a, const LaurentPolynomial& b, const Tolerance& tol) {
    const LaurentPolynomial items[] = {a, b};
    return gcd(items, tol);
}

LaurentPolynomial lcm(const LaurentPolynomial& a, const LaurentPolynomial& b, const Tolerance& tol) {
    if (a.is_zero() || b.is_zero()) return {};
    return canonical(exact_divide(canonical(a) * canonical(b), gcd(a, b, tol), tol));
}

std::optional<Symmetry> is_symmetric(const LaurentPolynomial& l, const Tolerance& tol) {
    if (l.is_zero()) throw Error(ErrorCode::InvalidArgument, "is_symmetric requires a nonzero polynomial");
    const int p = l.min_exp() + l.max_exp();
    const Scalar alpha = l.leading().conj() / l.trailing();
    for (int k = l.min_exp(); k <= l.max_exp(); ++k) {
        if (!approx_equal(l.coeff(p - k).conj(), alpha * l.coeff(k), tol)) return std::nullopt;
    }
    return Symmetry{p, alpha};
}

std::optional<UnitElement> triple_symmetry(const LaurentPolynomial& l, const LaurentPolynomial& m,
                                           const LaurentPolynomial& c, const Tolerance& tol) {
    const LaurentPolynomial& ref = l.is_zero() ? m : l;
    if (ref.is_zero()) throw Error(ErrorCode::InvalidArgument, "triple_symmetry requires (L, M) != (0, 0)");
    UnitElement n{ref.leading().conj() / ref.trailing(), -(ref.min_exp() + ref.max_exp())};
    const LaurentPolynomial unit = n.as_polynomial();
    if (!approx_equal(l.star(), unit * l, tol)) return std::nullopt;
    if (!approx_equal(m.star(), unit * m, tol)) return std::nullopt;
    if (!approx_equal(c.star(), -(unit * c), tol)) return std::nullopt;
    return n;
}

std::optional<UnitElement> unit_ratio(const LaurentPolynomial& a, const LaurentPolynomial& b, const Tolerance& tol) {
    if (a.is_zero() && b.is_zero()) return UnitElement{Scalar(1), 0};
    if (a.is_zero() || b.is_zero()) return std::nullopt;
    if (a.span() != b.span()) return std::nullopt;
    UnitElement n{a.trailing() / b.trailing(), a.min_exp() - b.min_exp()};
    if (!approx_equal(a, n.as_polynomial() * b, tol)) return std::nullopt;
    return n;
}

Scalar symmetrizing_factor(const Scalar& alpha, const Tolerance& tol) {
    if (approx_equal(alpha, Scalar(1), tol)) return alpha.is_exact() ? Scalar(1) : Scalar::approx(1.0);
    Scalar beta = Scalar(1) + alpha;
    if (beta.is_zero(tol)) return alpha.is_exact() ? Scalar::i() : Scalar::approx(0.0, 1.0);
    return beta;
}

std::optional<std::pair<LaurentPolynomial, Scalar>> self_reciprocal_normalize(const LaurentPolynomial& p,
                                                                             const Tolerance& tol) {
    if (p.is_zero()) return std::nullopt;
    Scalar factor = Scalar(1) / p.leading();
    LaurentPolynomial monic = p * factor;
    auto sym = is_symmetric(monic, tol);
    if (!sym) return std::nullopt;
    if (!approx_equal(sym->alpha * sym->alpha.conj(), Scalar(1), tol)) return std::nullopt;
    const Scalar beta = symmetrizing_factor(sym->alpha, tol);
    factor *= beta;
    // Leading coefficient of the result is beta; keep its argument in [0, pi).
    const auto b = beta.to_complex();
    const bool flip = beta.is_exact() ? (sgn(beta.exact_value().im) < 0 ||
                                         (sgn(beta.exact_value().im) == 0 && sgn(beta.exact_value().re) < 0))
                                      : (b.imag() < 0 || (b.imag() == 0 && b.real() < 0));
    if (flip) factor = -factor;
    return std::make_pair(p * factor, factor);
}

}  // namespace mlst
