#pragma once

#include <ostream>
#include <random>
#include <vector>

#include "moment_lst/functionals.hpp"
#include "moment_lst/laurent.hpp"

namespace mlst {

inline void PrintTo(const LaurentPolynomial& p, std::ostream* os) { *os << p.to_string(); }
inline void PrintTo(const Scalar& s, std::ostream* os) { *os << s.to_string(); }

}  // namespace mlst

namespace mlst::testing {

inline LaurentPolynomial poly(int min_exp, std::vector<Scalar> coeffs) {
    return LaurentPolynomial(min_exp, std::move(coeffs));
}

inline const Scalar I = Scalar::i();
inline const LaurentPolynomial Z = LaurentPolynomial::z();

/// Seeded source of small exact objects.
class Gen {
   public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    /// Gaussian integer with parts in [-r, r].
    Scalar gaussian(int r = 3) { return Scalar(integer(-r, r), integer(-r, r)); }
    Scalar nonzero_gaussian(int r = 3) {
        for (;;) {
            Scalar s = gaussian(r);
            if (!s.is_exact_zero()) return s;
        }
    }

    /// Ordinary polynomial of exact degree `deg` with nonzero constant term.
    LaurentPolynomial polynomial(int deg, int r = 3) {
        std::vector<Scalar> c(static_cast<std::size_t>(deg + 1));
        for (auto& x : c) x = gaussian(r);
        c.front() = nonzero_gaussian(r);
        c.back() = nonzero_gaussian(r);
        return LaurentPolynomial(0, std::move(c));
    }

    LaurentPolynomial laurent(int max_span, int r = 3) {
        return polynomial(integer(0, max_span), r).shifted(integer(-2, 2));
    }

    /// Product of deg factors (z - r), r a nonzero Gaussian integer.
    LaurentPolynomial split_polynomial(int deg, int r = 2) {
        LaurentPolynomial p = 1;
        for (int k = 0; k < deg; ++k) p *= LaurentPolynomial(0, {-nonzero_gaussian(r), 1});
        return p;
    }

    /// Rational functional P/Q with degrees <= deg and P(0)/Q(0) an integer.
    HermitianFunctional closed_form(int deg) {
        LaurentPolynomial q = polynomial(integer(0, deg));
        std::vector<Scalar> c = polynomial(integer(0, deg)).coeffs();
        c.front() = q.coeff(0) * Scalar(integer(-3, 3));
        return rational(LaurentPolynomial(0, std::move(c)), q);
    }

    std::mt19937_64& engine() { return rng_; }

   private:
    std::mt19937_64 rng_;
};

}  // namespace mlst::testing
