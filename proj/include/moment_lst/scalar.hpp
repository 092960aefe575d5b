#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <variant>

namespace mlst {

/// Zero-test tolerance for the approximate backend. Passed explicitly to
/// every operation that needs to decide whether a coefficient vanishes.
struct Tolerance {
    double eps = 1e-10;
};

/// Element of the Gaussian rationals Q(i).
struct GaussianRational {
    mpq_class re;
    mpq_class im;
};

/// Complex scalar tagged with its backend: exact Gaussian rational or a
/// double-precision complex number. Mixed arithmetic promotes to approximate.
class Scalar {
   public:
    Scalar() : value_(GaussianRational{0, 0}) {}
    Scalar(int n) : value_(GaussianRational{n, 0}) {}  // NOLINT(google-explicit-constructor)
    Scalar(long n) : value_(GaussianRational{n, 0}) {}  // NOLINT(google-explicit-constructor)
    Scalar(const mpq_class& re, const mpq_class& im = 0) : value_(GaussianRational{re, im}) {}
    explicit Scalar(std::complex<double> z) : value_(z) {}

    static Scalar exact(const mpq_class& re, const mpq_class& im = 0) { return Scalar(re, im); }
    static Scalar approx(double re, double im = 0.0) { return Scalar(std::complex<double>(re, im)); }
    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

    bool is_exact() const noexcept { return std::holds_alternative<GaussianRational>(value_); }
    const GaussianRational& exact_value() const { return std::get<GaussianRational>(value_); }
    std::complex<double> to_complex() const;

    /// Converts an exact value to the approximate backend; identity otherwise.
    Scalar to_approx() const { return Scalar(to_complex()); }

    Scalar conj() const;
    Scalar real_part() const;
    Scalar imag_part() const;
    double abs() const { return std::abs(to_complex()); }

    /// Exact zero for the exact backend, bitwise 0.0 for the approximate one.
    bool is_exact_zero() const;
    bool is_zero(const Tolerance& tol = {}) const;
    bool is_real(const Tolerance& tol = {}) const { return imag_part().is_zero(tol); }

    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);
    Scalar operator-() const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    /// Structural equality: exact values compare exactly, approximate values
    /// bitwise. Use approx_equal for tolerance-aware comparisons.
    friend bool operator==(const Scalar& a, const Scalar& b);

    /// Renders in DSL syntax: `3`, `-1/2`, `2i`, `1-2i`, `0.6+0.8i`.
    std::string to_string() const;

   private:
    std::variant<GaussianRational, std::complex<double>> value_;
};

bool approx_equal(const Scalar& a, const Scalar& b, const Tolerance& tol = {});

/// s^k; negative k requires s != 0.
Scalar pow(const Scalar& s, int k);

/// Shortest decimal text that round-trips the double, always containing a
/// '.' or exponent so it re-parses as a decimal literal.
std::string format_decimal(double x);

}  // namespace mlst
