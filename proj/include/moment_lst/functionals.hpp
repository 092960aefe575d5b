#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moment_lst/laurent.hpp"
#include "moment_lst/quadrature.hpp"
#include "moment_lst/series.hpp"

namespace mlst {

/// Whether the Carathéodory series is known to be a rational function.
enum class RatStatus { Rational, NonRational, Unknown };

using CsEvaluator = std::function<std::complex<double>(std::complex<double>)>;

/// Backend interface. `cs(k)` is the primitive: coefficient 0 is mu_0 and
/// coefficient j >= 1 is 2 mu_{-j}. Implementations are immutable.
class FunctionalImpl {
   public:
    virtual ~FunctionalImpl() = default;

    virtual PowerSeries cs(int order) const = 0;
    /// Largest |n| with a known moment; nullopt when unbounded.
    virtual std::optional<int> window() const { return std::nullopt; }
    virtual const RationalCS* rational() const { return nullptr; }
    virtual RatStatus rat_status() const = 0;
    virtual bool is_exact() const = 0;
    virtual std::optional<CsEvaluator> evaluator() const { return std::nullopt; }
    virtual std::string label() const = 0;
};

/// Handle to an immutable Hermitian functional: mu_{-n} = conj(mu_n).
class HermitianFunctional {
   public:
    explicit HermitianFunctional(std::shared_ptr<const FunctionalImpl> impl,
                                 std::vector<std::string> warnings = {});

    /// mu_n = u[z^n]. OutOfWindow beyond a truncated backend's window.
    Scalar moment(int n) const;
    /// Carathéodory series through z^order.
    PowerSeries cs(int order = kDefaultOrder) const;
    /// Two-sided series; coefficient(n) = mu_{-n}.
    LaurentSeries ls(int order = kDefaultOrder) const { return LaurentSeries(cs(order)); }

    std::optional<int> window() const { return impl_->window(); }
    const RationalCS* rational() const { return impl_->rational(); }
    RatStatus rat_status() const { return impl_->rat_status(); }
    bool is_exact() const { return impl_->is_exact(); }
    std::optional<CsEvaluator> evaluator() const { return impl_->evaluator(); }
    std::string label() const { return impl_->label(); }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    /// Window clamp: min(n, window) for truncated backends.
    int clamp_order(int n) const;

   private:
    std::shared_ptr<const FunctionalImpl> impl_;
    std::vector<std::string> warnings_;
};

// Constructors.

/// Normalized Lebesgue functional; CS = 1.
HermitianFunctional leb();
/// Point mass at alpha: mu_n = alpha^n for n >= 0, Hermitian extension below.
/// Records a warning when |alpha| != 1.
HermitianFunctional delta(const Scalar& alpha, const Tolerance& tol = {});
HermitianFunctional rational(const RationalCS& f);
HermitianFunctional rational(const LaurentPolynomial& p, const LaurentPolynomial& q, const Tolerance& tol = {});
/// Moments mu_0..mu_N.
HermitianFunctional truncated(std::vector<Scalar> moments, const Tolerance& tol = {});
/// Normalized Lebesgue measure on the left half arc {pi/2 <= theta <= 3pi/2},
/// weight 2 against d theta / 2 pi. Certified non-rational.
HermitianFunctional arc_lebesgue();
/// Real weight against d theta / 2 pi, moments by quadrature.
HermitianFunctional quadrature(Weight w, std::string label, int panels = kDefaultPanels);
/// Real-weighted sum; collapses to a rational functional when every term is.
HermitianFunctional combine(const std::vector<std::pair<Scalar, HermitianFunctional>>& terms,
                            const Tolerance& tol = {});

/// The functional with CS F = (G M + C) / L, G the CS of v.
/// NotAnalytic if F has a pole at 0, HermiticityViolation if F(0) is not real.
HermitianFunctional lst_image(const HermitianFunctional& v, const LaurentPolynomial& l, const LaurentPolynomial& m,
                              const LaurentPolynomial& c, const Tolerance& tol = {});

/// As lst_image, but always by series division, never through a rational
/// normal form. Stable for long chains of approximate images.
HermitianFunctional series_image(const HermitianFunctional& v, const LaurentPolynomial& l, const LaurentPolynomial& m,
                                 const LaurentPolynomial& c, const Tolerance& tol = {});

/// v^: CS i(nu_0 - G). Moments 0 at 0, i nu_n for n >= 1, -i nu_{-n} below.
HermitianFunctional hat(const HermitianFunctional& v);

/// Closed-form arc moments; mu_{2n-1} = (2/pi)(-1)^n/(2n-1), mu_{2n} = 0.
double arc_moment(int n);
/// 1 + (2i/pi) log((1+iz)/(1-iz)).
std::complex<double> arc_cs(std::complex<double> z);

/// u L as a moment oracle: (uL)[z^n] = sum_k l_k mu_{n+k}. Not Hermitian in
/// general.
class ActedFunctional {
   public:
    ActedFunctional(HermitianFunctional u, LaurentPolynomial l) : u_(std::move(u)), l_(std::move(l)) {}

    Scalar moment(int n) const;
    /// All moments n = lo..hi, sharing one expansion of u.
    std::vector<Scalar> moments(int lo, int hi) const;
    /// Largest |n| such that every moment used is inside u's window.
    std::optional<int> window() const;

   private:
    HermitianFunctional u_;
    LaurentPolynomial l_;
};

ActedFunctional act(const HermitianFunctional& u, const LaurentPolynomial& l);

struct PositivityReport {
    double min_re = 0.0;
    std::complex<double> argmin;
    bool nonpositive = false;
};

/// Minimum of Re F over r_k = r_max k/(n_r - 1), theta_j = 2 pi j / n_theta.
PositivityReport positivity_scan(const CsEvaluator& f, double r_max = 0.99, int n_r = 256, int n_theta = 256);

}  // namespace mlst
