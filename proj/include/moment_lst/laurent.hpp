#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "moment_lst/scalar.hpp"

namespace mlst {

/// Element of the Laurent polynomial ring C[z, 1/z].
///
/// Stored densely between the lowest and highest nonzero exponent; both end
/// coefficients are nonzero, so the zero polynomial has no exponents at all.
/// Arithmetic drops coefficients that are exactly zero; approximate values
/// that are merely small are dropped only by `trimmed(tol)`.
class LaurentPolynomial {
   public:
    LaurentPolynomial() = default;
    LaurentPolynomial(const Scalar& c);  // NOLINT(google-explicit-constructor)
    LaurentPolynomial(int c) : LaurentPolynomial(Scalar(c)) {}  // NOLINT(google-explicit-constructor)
    LaurentPolynomial(int min_exp, std::vector<Scalar> coeffs);

    static LaurentPolynomial monomial(const Scalar& c, int k);
    static LaurentPolynomial z(int k = 1) { return monomial(Scalar(1), k); }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// Lowest and highest exponent; undefined (0) for the zero polynomial.
    int min_exp() const noexcept { return min_exp_; }
    int max_exp() const noexcept { return min_exp_ + static_cast<int>(coeffs_.size()) - 1; }
    /// max_exp - min_exp; the degree of the class in Λ/U. -1 for zero.
    int span() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_polynomial() const noexcept { return is_zero() || min_exp_ >= 0; }
    bool is_monomial() const noexcept { return coeffs_.size() == 1; }
    bool is_exact() const;

    Scalar coeff(int k) const;
    Scalar leading() const { return coeffs_.back(); }
    Scalar trailing() const { return coeffs_.front(); }
    const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }

    LaurentPolynomial& operator+=(const LaurentPolynomial& rhs);
    LaurentPolynomial& operator-=(const LaurentPolynomial& rhs);
    LaurentPolynomial& operator*=(const LaurentPolynomial& rhs);
    LaurentPolynomial& operator*=(const Scalar& s);
    LaurentPolynomial operator-() const;

    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
    friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
    /// Structural equality (exact coefficients compared exactly).
    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b);

    /// Multiplication by z^k.
    LaurentPolynomial shifted(int k) const;
    /// H_*(z) = conj(H(1/conj z)): conjugate coefficients, negate exponents.
    LaurentPolynomial star() const;
    /// z^p H_*(z).
    LaurentPolynomial star_p(int p) const { return star().shifted(p); }
    /// Drops coefficients with |c| <= tol.eps (exact zeros only for exact values).
    LaurentPolynomial trimmed(const Tolerance& tol) const;
    LaurentPolynomial to_approx() const;

    std::complex<double> evaluate(std::complex<double> z) const;
    Scalar evaluate(const Scalar& z) const;

    /// DSL rendering, e.g. `3 - (1+2i)*z^-2 + z^5`.
    std::string to_string() const;

   private:
    void normalize();

    int min_exp_ = 0;
    std::vector<Scalar> coeffs_;
};

bool approx_equal(const LaurentPolynomial& a, const LaurentPolynomial& b, const Tolerance& tol = {});

LaurentPolynomial pow(const LaurentPolynomial& p, int k);

/// Invertible element alpha * z^k of the Laurent ring.
struct UnitElement {
    Scalar alpha;
    int k = 0;

    LaurentPolynomial as_polynomial() const { return LaurentPolynomial::monomial(alpha, k); }
};

struct DivMod {
    LaurentPolynomial quotient;
    LaurentPolynomial remainder;
};

/// Division in Λ: a = q*d + r where, after shifting both to ordinary
/// polynomials with nonzero constant term, deg r < deg d.
DivMod divmod(const LaurentPolynomial& a, const LaurentPolynomial& d, const Tolerance& tol = {});

/// Exact quotient a/d; throws InvalidArgument if the remainder is nonzero.
LaurentPolynomial exact_divide(const LaurentPolynomial& a, const LaurentPolynomial& d, const Tolerance& tol = {});

/// Representative of the class of `p` in Λ/U: shifted to min_exp = 0, monic.
LaurentPolynomial canonical(const LaurentPolynomial& p);

/// Greatest common divisor of the nonzero entries, as a canonical
/// representative. Throws AllZero when every input vanishes.
LaurentPolynomial gcd(std::span<const LaurentPolynomial> polys, const Tolerance& tol = {});
LaurentPolynomial gcd(const LaurentPolynomial& a, const LaurentPolynomial& b, const Tolerance& tol = {});
LaurentPolynomial lcm(const LaurentPolynomial& a, const LaurentPolynomial& b, const Tolerance& tol = {});

struct Symmetry {
    int p = 0;
    Scalar alpha;
};

/// (p, alpha) with star_p(L, p) = alpha * L, if it exists. p is forced to
/// min_exp + max_exp.
std::optional<Symmetry> is_symmetric(const LaurentPolynomial& l, const Tolerance& tol = {});

/// N in U with (L_*, M_*, C_*) = N * (L, M, -C), if one exists.
std::optional<UnitElement> triple_symmetry(const LaurentPolynomial& l, const LaurentPolynomial& m,
                                           const LaurentPolynomial& c, const Tolerance& tol = {});

/// N in U with a = N * b, if one exists.
std::optional<UnitElement> unit_ratio(const LaurentPolynomial& a, const LaurentPolynomial& b,
                                      const Tolerance& tol = {});

/// Rescales a polynomial that is self-reciprocal up to a unimodular factor
/// (star_p(P) = alpha P) so that star_p(P) = P exactly, with the leading
/// coefficient's argument in [0, pi). Returns nullopt if P is not
/// self-reciprocal up to a scalar. The scaling stays inside Q(i).
std::optional<std::pair<LaurentPolynomial, Scalar>> self_reciprocal_normalize(const LaurentPolynomial& p,
                                                                             const Tolerance& tol = {});

/// Scalar beta with conj(beta) * alpha = beta for |alpha| = 1, chosen in
/// Q(i) when alpha is: 1 for alpha = 1, i for alpha = -1, else 1 + alpha.
Scalar symmetrizing_factor(const Scalar& alpha, const Tolerance& tol = {});

}  // namespace mlst
