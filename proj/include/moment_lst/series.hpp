#pragma once

#include <functional>
#include <vector>

#include "moment_lst/laurent.hpp"

namespace mlst {

inline constexpr int kDefaultOrder = 32;

/// One-sided formal series c_0 + c_1 z + ... known through z^order.
/// Coefficients past the order are unknown, not zero.
class PowerSeries {
   public:
    PowerSeries() : coeffs_{Scalar(0)} {}
    explicit PowerSeries(std::vector<Scalar> coeffs);

    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const Scalar& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }

    PowerSeries truncated(int order) const;
    PowerSeries conj_coeffs() const;

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator*(const PowerSeries& a, const Scalar& s);
    /// Product with an ordinary polynomial (exponents >= 0); keeps the order.
    friend PowerSeries operator*(const PowerSeries& a, const LaurentPolynomial& p);
    friend PowerSeries operator+(const PowerSeries& a, const LaurentPolynomial& p);

    /// Index of the first coefficient that is not zero within `tol`, if any.
    std::optional<int> first_nonzero(const Tolerance& tol = {}) const;

   private:
    std::vector<Scalar> coeffs_;
};

bool approx_equal(const PowerSeries& a, const PowerSeries& b, const Tolerance& tol = {});

/// Carathéodory function P/Q in lowest terms, Q monic with Q(0) != 0, and
/// P(0)/Q(0) real.
class RationalCS {
   public:
    RationalCS() : p_(Scalar(1)), q_(Scalar(1)) {}
    /// Accepts any Laurent numerator and denominator; reduces to lowest terms.
    /// Throws NotAnalytic if the quotient has a pole at 0 and
    /// HermiticityViolation if the constant term is not real.
    RationalCS(const LaurentPolynomial& p, const LaurentPolynomial& q, const Tolerance& tol = {});

    const LaurentPolynomial& numerator() const noexcept { return p_; }
    const LaurentPolynomial& denominator() const noexcept { return q_; }
    bool is_exact() const { return p_.is_exact() && q_.is_exact(); }

    Scalar constant_term() const { return p_.coeff(0) / q_.coeff(0); }
    std::complex<double> evaluate(std::complex<double> z) const { return p_.evaluate(z) / q_.evaluate(z); }

    friend RationalCS operator+(const RationalCS& a, const RationalCS& b);
    friend RationalCS operator*(const RationalCS& a, const Scalar& s);
    friend bool operator==(const RationalCS& a, const RationalCS& b) {
        return a.p_ == b.p_ && a.q_ == b.q_;
    }

   private:
    LaurentPolynomial p_;
    LaurentPolynomial q_;
};

/// Taylor coefficients of P/Q at 0 through z^n.
PowerSeries expand(const RationalCS& r, int n);

/// Carathéodory series from a moment oracle n -> mu_n: coefficient 0 is
/// mu_0, coefficient n >= 1 is 2 mu_{-n}.
PowerSeries cs_from_moments(const std::function<Scalar(int)>& moment, int n, const Tolerance& tol = {});

/// Two-sided series (F + F_*)/2; the coefficient of z^n is mu_{-n}.
class LaurentSeries {
   public:
    explicit LaurentSeries(PowerSeries cs) : cs_(std::move(cs)) {}
    Scalar coefficient(int n) const;
    int order() const noexcept { return cs_.order(); }

   private:
    PowerSeries cs_;
};

LaurentSeries ls_from_cs(const PowerSeries& f);
LaurentSeries ls_from_cs(const RationalCS& f, int n = kDefaultOrder);

/// T with T * L = S, as a power series. With L = z^k * L~, the first k
/// coefficients of S must vanish (NotAnalytic otherwise); the result loses k
/// orders of validity when k > 0.
PowerSeries divide_by_laurent(const PowerSeries& s, const LaurentPolynomial& l, const Tolerance& tol = {});

/// Rational function num/den over Laurent polynomials (no normalization
/// beyond exact-zero stripping). Used for exact identities between
/// Carathéodory functions and their reflections.
struct RationalFunction {
    LaurentPolynomial num;
    LaurentPolynomial den = LaurentPolynomial(1);

    static RationalFunction from(const RationalCS& r) { return {r.numerator(), r.denominator()}; }
    RationalFunction star() const { return {num.star(), den.star()}; }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend RationalFunction operator*(const RationalFunction& a, const LaurentPolynomial& p) {
        return {a.num * p, a.den};
    }

    bool is_zero(const Tolerance& tol = {}) const { return num.trimmed(tol).is_zero(); }
    /// The Laurent polynomial this function equals, if it is one.
    std::optional<LaurentPolynomial> as_polynomial(const Tolerance& tol = {}) const;
};

}  // namespace mlst
