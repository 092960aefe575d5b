#include "moment_lst/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

#include "moment_lst/errors.hpp"

namespace mlst {

HermitianFunctional::HermitianFunctional(std::shared_ptr<const FunctionalImpl> impl, std::vector<std::string> warnings)
    : impl_(std::move(impl)), warnings_(std::move(warnings)) {}

PowerSeries HermitianFunctional::cs(int order) const {
    if (order < 0) throw Error(ErrorCode::InvalidArgument, "series order must be >= 0");
    if (auto w = window(); w && order > *w) {
        throw Error(ErrorCode::OutOfWindow, label() + " has moments only for |n| <= " + std::to_string(*w) +
                                                ", requested order " + std::to_string(order));
    }
    return impl_->cs(order);
}

Scalar HermitianFunctional::moment(int n) const {
    const int k = std::abs(n);
    const PowerSeries s = cs(k);
    if (k == 0) return s[0];
    const Scalar mu_neg = s[k] / Scalar(2);
    return n < 0 ? mu_neg : mu_neg.conj();
}

int HermitianFunctional::clamp_order(int n) const {
    const auto w = window();
    return w ? std::min(n, *w) : n;
}

namespace {

Scalar zero_like(bool exact) { return exact ? Scalar(0) : Scalar::approx(0.0); }

class RationalImpl final : public FunctionalImpl {
   public:
    RationalImpl(RationalCS f, std::string label) : f_(std::move(f)), label_(std::move(label)) {}

    PowerSeries cs(int order) const override { return expand(f_, order); }
    const RationalCS* rational() const override { return &f_; }
    RatStatus rat_status() const override { return RatStatus::Rational; }
    bool is_exact() const override { return f_.is_exact(); }
    std::optional<CsEvaluator> evaluator() const override {
        return [f = f_](std::complex<double> z) { return f.evaluate(z); };
    }
    std::string label() const override { return label_; }

   private:
    RationalCS f_;
    std::string label_;
};

class TruncatedImpl final : public FunctionalImpl {
   public:
    explicit TruncatedImpl(std::vector<Scalar> moments) : moments_(std::move(moments)) {}

    PowerSeries cs(int order) const override {
        std::vector<Scalar> c(static_cast<std::size_t>(order + 1));
        c[0] = moments_[0];
        for (int k = 1; k <= order; ++k) c[k] = Scalar(2) * moments_[k].conj();
        return PowerSeries(std::move(c));
    }
    std::optional<int> window() const override { return static_cast<int>(moments_.size()) - 1; }
    RatStatus rat_status() const override { return RatStatus::Unknown; }
    bool is_exact() const override {
        return std::all_of(moments_.begin(), moments_.end(), [](const Scalar& s) { return s.is_exact(); });
    }
    std::string label() const override {
        std::string out = "moments[";
        for (std::size_t k = 0; k < moments_.size(); ++k) {
            if (k > 0) out += ", ";
            out += moments_[k].to_string();
        }
        return out + "]";
    }

   private:
    std::vector<Scalar> moments_;
};

class ArcImpl final : public FunctionalImpl {
   public:
    PowerSeries cs(int order) const override {
        std::vector<Scalar> c(static_cast<std::size_t>(order + 1), Scalar::approx(0.0));
        c[0] = Scalar::approx(1.0);
        for (int k = 1; k <= order; ++k) c[k] = Scalar::approx(2.0 * arc_moment(-k));
        return PowerSeries(std::move(c));
    }
    RatStatus rat_status() const override { return RatStatus::NonRational; }
    bool is_exact() const override { return false; }
    std::optional<CsEvaluator> evaluator() const override { return CsEvaluator(arc_cs); }
    std::string label() const override { return "arc"; }
};

class QuadratureImpl final : public FunctionalImpl {
   public:
    QuadratureImpl(Weight w, std::string label, int panels)
        : w_(std::move(w)), label_(std::move(label)), panels_(panels) {}

    PowerSeries cs(int order) const override {
        std::lock_guard lock(mutex_);
        if (static_cast<int>(cache_.size()) <= order) cache_ = quadrature_moments(w_, order, panels_);
        std::vector<Scalar> c(static_cast<std::size_t>(order + 1));
        c[0] = Scalar::approx(cache_[0].real());
        for (int k = 1; k <= order; ++k) c[k] = Scalar(2.0 * std::conj(cache_[k]));
        return PowerSeries(std::move(c));
    }
    RatStatus rat_status() const override { return RatStatus::Unknown; }
    bool is_exact() const override { return false; }
    std::string label() const override { return label_; }

   private:
    Weight w_;
    std::string label_;
    int panels_;
    mutable std::mutex mutex_;
    mutable std::vector<std::complex<double>> cache_;
};

RatStatus combined_status(const std::vector<RatStatus>& parts) {
    int non_rational = 0;
    for (auto s : parts) {
        if (s == RatStatus::Unknown) return RatStatus::Unknown;
        if (s == RatStatus::NonRational) ++non_rational;
    }
    if (non_rational == 0) return RatStatus::Rational;
    // A single non-rational term cannot be cancelled by rational ones.
    return non_rational == 1 ? RatStatus::NonRational : RatStatus::Unknown;
}

class CombinationImpl final : public FunctionalImpl {
   public:
    CombinationImpl(std::vector<std::pair<Scalar, HermitianFunctional>> terms, std::string label)
        : terms_(std::move(terms)), label_(std::move(label)) {}

    PowerSeries cs(int order) const override {
        std::optional<PowerSeries> acc;
        for (const auto& [w, f] : terms_) {
            PowerSeries s = f.cs(order) * w;
            acc = acc ? *acc + s : s;
        }
        return *acc;
    }
    std::optional<int> window() const override {
        std::optional<int> w;
        for (const auto& t : terms_) {
            if (auto tw = t.second.window()) w = w ? std::min(*w, *tw) : *tw;
        }
        return w;
    }
    RatStatus rat_status() const override {
        std::vector<RatStatus> parts;
        for (const auto& t : terms_) parts.push_back(t.second.rat_status());
        return combined_status(parts);
    }
    bool is_exact() const override {
        return std::all_of(terms_.begin(), terms_.end(),
                           [](const auto& t) { return t.first.is_exact() && t.second.is_exact(); });
    }
    std::optional<CsEvaluator> evaluator() const override {
        std::vector<std::pair<std::complex<double>, CsEvaluator>> parts;
        for (const auto& [w, f] : terms_) {
            auto e = f.evaluator();
            if (!e) return std::nullopt;
            parts.emplace_back(w.to_complex(), *e);
        }
        return [parts](std::complex<double> z) {
            std::complex<double> s = 0.0;
            for (const auto& [w, e] : parts) s += w * e(z);
            return s;
        };
    }
    std::string label() const override { return label_; }

   private:
    std::vector<std::pair<Scalar, HermitianFunctional>> terms_;
    std::string label_;
};

class HatImpl final : public FunctionalImpl {
   public:
    explicit HatImpl(HermitianFunctional base) : base_(std::move(base)) {}

    PowerSeries cs(int order) const override {
        const PowerSeries g = base_.cs(order);
        const Scalar minus_i = g[0].is_exact() ? -Scalar::i() : Scalar::approx(0.0, -1.0);
        std::vector<Scalar> c(static_cast<std::size_t>(order + 1));
        c[0] = zero_like(g[0].is_exact());
        for (int k = 1; k <= order; ++k) c[k] = minus_i * g[k];
        return PowerSeries(std::move(c));
    }
    std::optional<int> window() const override { return base_.window(); }
    RatStatus rat_status() const override { return base_.rat_status(); }
    bool is_exact() const override { return base_.is_exact(); }
    std::optional<CsEvaluator> evaluator() const override {
        auto g = base_.evaluator();
        if (!g) return std::nullopt;
        const std::complex<double> nu0 = base_.cs(0)[0].to_complex();
        return [g = *g, nu0](std::complex<double> z) { return std::complex<double>(0.0, 1.0) * (nu0 - g(z)); };
    }
    std::string label() const override { return "hat(" + base_.label() + ")"; }

   private:
    HermitianFunctional base_;
};

class ImageImpl final : public FunctionalImpl {
   public:
    ImageImpl(HermitianFunctional v, LaurentPolynomial l, LaurentPolynomial m, LaurentPolynomial c, Tolerance tol)
        : v_(std::move(v)), l_(std::move(l)), m_(std::move(m)), c_(std::move(c)), tol_(tol) {}

    PowerSeries cs(int order) const override {
        const int k = l_.min_exp();
        const PowerSeries g = v_.cs(order + k);
        return divide_by_laurent(g * m_ + c_, l_, tol_).truncated(order);
    }
    std::optional<int> window() const override {
        auto w = v_.window();
        if (!w) return std::nullopt;
        return *w - l_.min_exp();
    }
    RatStatus rat_status() const override { return v_.rat_status(); }
    bool is_exact() const override { return v_.is_exact() && l_.is_exact() && m_.is_exact() && c_.is_exact(); }
    std::optional<CsEvaluator> evaluator() const override {
        auto g = v_.evaluator();
        if (!g) return std::nullopt;
        return [g = *g, l = l_, m = m_, c = c_](std::complex<double> z) {
            return (g(z) * m.evaluate(z) + c.evaluate(z)) / l.evaluate(z);
        };
    }
    std::string label() const override {
        return "image(" + v_.label() + "; " + l_.to_string() + "; " + m_.to_string() + "; " + c_.to_string() + ")";
    }

   private:
    HermitianFunctional v_;
    LaurentPolynomial l_, m_, c_;
    Tolerance tol_;
};

std::string weighted_label(const Scalar& w, const std::string& label) {
    if (w == Scalar(1)) return label;
    return w.to_string() + "*" + label;
}

}  // namespace

HermitianFunctional leb() { return HermitianFunctional(std::make_shared<RationalImpl>(RationalCS(), "leb")); }

HermitianFunctional delta(const Scalar& alpha, const Tolerance& tol) {
    if (alpha.is_zero(tol)) throw Error(ErrorCode::InvalidArgument, "delta requires a nonzero point");
    const LaurentPolynomial az = LaurentPolynomial::monomial(alpha.conj(), 1);
    RationalCS f(1 + az, 1 - az, tol);
    std::vector<std::string> warnings;
    if (!approx_equal(alpha * alpha.conj(), Scalar(1), tol)) {
        warnings.push_back("non_unimodular_delta: |" + alpha.to_string() +
                           "| != 1; the Hermitian extension differs from point evaluation at negative powers");
    }
    return HermitianFunctional(std::make_shared<RationalImpl>(std::move(f), "delta(" + alpha.to_string() + ")"),
                               std::move(warnings));
}

HermitianFunctional rational(const RationalCS& f) {
    return HermitianFunctional(std::make_shared<RationalImpl>(
        f, "rational(" + f.numerator().to_string() + "; " + f.denominator().to_string() + ")"));
}

HermitianFunctional rational(const LaurentPolynomial& p, const LaurentPolynomial& q, const Tolerance& tol) {
    return rational(RationalCS(p, q, tol));
}

HermitianFunctional truncated(std::vector<Scalar> moments, const Tolerance& tol) {
    if (moments.empty()) throw Error(ErrorCode::InvalidArgument, "moment list is empty");
    if (!moments[0].is_real(tol)) {
        throw Error(ErrorCode::HermiticityViolation, "mu_0 = " + moments[0].to_string() + " is not real");
    }
    return HermitianFunctional(std::make_shared<TruncatedImpl>(std::move(moments)));
}

HermitianFunctional arc_lebesgue() { return HermitianFunctional(std::make_shared<ArcImpl>()); }

HermitianFunctional quadrature(Weight w, std::string label, int panels) {
    return HermitianFunctional(std::make_shared<QuadratureImpl>(std::move(w), std::move(label), panels));
}

HermitianFunctional combine(const std::vector<std::pair<Scalar, HermitianFunctional>>& terms, const Tolerance& tol) {
    if (terms.empty()) throw Error(ErrorCode::InvalidArgument, "empty combination");
    std::string label;
    std::vector<std::string> warnings;
    bool all_rational = true;
    for (const auto& [w, f] : terms) {
        if (!w.is_real(tol)) throw Error(ErrorCode::HermiticityViolation, "combination weight " + w.to_string() + " is not real");
        if (!label.empty()) label += " + ";
        label += weighted_label(w, f.label());
        warnings.insert(warnings.end(), f.warnings().begin(), f.warnings().end());
        all_rational = all_rational && f.rational() != nullptr;
    }
    if (terms.size() == 1 && terms[0].first == Scalar(1)) return terms[0].second;
    if (all_rational) {
        std::optional<RationalCS> acc;
        for (const auto& [w, f] : terms) {
            const RationalCS& r = *f.rational();
            RationalCS scaled(r.numerator() * w.real_part(), r.denominator(), tol);
            acc = acc ? RationalCS(acc->numerator() * scaled.denominator() + scaled.numerator() * acc->denominator(),
                                   acc->denominator() * scaled.denominator(), tol)
                      : scaled;
        }
        return HermitianFunctional(std::make_shared<RationalImpl>(*acc, label), std::move(warnings));
    }
    std::vector<std::pair<Scalar, HermitianFunctional>> real_terms;
    for (const auto& [w, f] : terms) real_terms.emplace_back(w.real_part(), f);
    return HermitianFunctional(std::make_shared<CombinationImpl>(std::move(real_terms), label), std::move(warnings));
}

HermitianFunctional lst_image(const HermitianFunctional& v, const LaurentPolynomial& l, const LaurentPolynomial& m,
                              const LaurentPolynomial& c, const Tolerance& tol) {
    if (l.trimmed(tol).is_zero()) throw Error(ErrorCode::DivisionByZero, "LST image with L = 0");
    int low = l.min_exp();
    if (!m.is_zero()) low = std::min(low, m.min_exp());
    if (!c.is_zero()) low = std::min(low, c.min_exp());
    const LaurentPolynomial ls = l.shifted(-low), ms = m.shifted(-low), cs = c.shifted(-low);
    if (const RationalCS* g = v.rational()) {
        RationalCS f(g->numerator() * ms + cs * g->denominator(), g->denominator() * ls, tol);
        return HermitianFunctional(std::make_shared<RationalImpl>(
            f, "rational(" + f.numerator().to_string() + "; " + f.denominator().to_string() + ")"));
    }
    return series_image(v, ls, ms, cs, tol);
}

HermitianFunctional series_image(const HermitianFunctional& v, const LaurentPolynomial& l, const LaurentPolynomial& m,
                                 const LaurentPolynomial& c, const Tolerance& tol) {
    if (l.trimmed(tol).is_zero()) throw Error(ErrorCode::DivisionByZero, "LST image with L = 0");
    int low = l.min_exp();
    if (!m.is_zero()) low = std::min(low, m.min_exp());
    if (!c.is_zero()) low = std::min(low, c.min_exp());
    auto impl = std::make_shared<ImageImpl>(v, l.shifted(-low), m.shifted(-low), c.shifted(-low), tol);
    const Scalar f0 = impl->cs(0)[0];
    if (!f0.is_real(tol)) {
        throw Error(ErrorCode::HermiticityViolation, "image has non-real constant term " + f0.to_string());
    }
    return HermitianFunctional(std::move(impl), v.warnings());
}

HermitianFunctional hat(const HermitianFunctional& v) {
    if (const RationalCS* g = v.rational()) {
        const Scalar i = g->is_exact() ? Scalar::i() : Scalar::approx(0.0, 1.0);
        const Scalar nu0 = g->constant_term();
        RationalCS h((g->denominator() * nu0 - g->numerator()) * i, g->denominator());
        return HermitianFunctional(std::make_shared<RationalImpl>(std::move(h), "hat(" + v.label() + ")"));
    }
    return HermitianFunctional(std::make_shared<HatImpl>(v));
}

double arc_moment(int n) {
    const int m = std::abs(n);
    if (m == 0) return 1.0;
    if (m % 2 == 0) return 0.0;
    const int j = (m + 1) / 2;
    return (2.0 / std::numbers::pi) * (j % 2 == 0 ? 1.0 : -1.0) / m;
}

std::complex<double> arc_cs(std::complex<double> z) {
    const std::complex<double> i(0.0, 1.0);
    return 1.0 + (2.0 * i / std::numbers::pi) * std::log((1.0 + i * z) / (1.0 - i * z));
}

std::optional<int> ActedFunctional::window() const {
    auto w = u_.window();
    if (!w || l_.is_zero()) return w;
    return std::min(*w - l_.max_exp(), *w + l_.min_exp());
}

std::vector<Scalar> ActedFunctional::moments(int lo, int hi) const {
    std::vector<Scalar> out;
    if (hi < lo) return out;
    if (l_.is_zero()) return std::vector<Scalar>(static_cast<std::size_t>(hi - lo + 1), Scalar(0));
    const int reach = std::max({std::abs(lo + l_.min_exp()), std::abs(lo + l_.max_exp()), std::abs(hi + l_.min_exp()),
                                std::abs(hi + l_.max_exp())});
    const LaurentSeries s = u_.ls(reach);
    // s.coefficient(j) = mu_{-j}.
    for (int n = lo; n <= hi; ++n) {
        Scalar acc = Scalar(0);
        for (int k = l_.min_exp(); k <= l_.max_exp(); ++k) {
            const Scalar lk = l_.coeff(k);
            if (!lk.is_exact_zero()) acc += lk * s.coefficient(-(n + k));
        }
        out.push_back(std::move(acc));
    }
    return out;
}

Scalar ActedFunctional::moment(int n) const { return moments(n, n).front(); }

ActedFunctional act(const HermitianFunctional& u, const LaurentPolynomial& l) { return ActedFunctional(u, l); }

PositivityReport positivity_scan(const CsEvaluator& f, double r_max, int n_r, int n_theta) {
    if (r_max >= 1.0) throw Error(ErrorCode::InvalidArgument, "positivity scan needs r < 1");
    PositivityReport rep;
    rep.min_re = std::numeric_limits<double>::infinity();
    for (int a = 0; a < n_r; ++a) {
        const double r = n_r == 1 ? r_max : r_max * a / (n_r - 1);
        for (int b = 0; b < n_theta; ++b) {
            const std::complex<double> z = std::polar(r, 2.0 * std::numbers::pi * b / n_theta);
            const double re = f(z).real();
            if (re < rep.min_re) {
                rep.min_re = re;
                rep.argmin = z;
            }
        }
    }
    rep.nonpositive = rep.min_re <= 0.0;
    return rep;
}

}  // namespace mlst
