#include "moment_lst/scalar.hpp"

#include <charconv>
#include <cmath>

#include "moment_lst/errors.hpp"

namespace mlst {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DivisionByZero: return "division_by_zero";
        case ErrorCode::AllZero: return "all_zero";
        case ErrorCode::HermiticityViolation: return "hermiticity_violation";
        case ErrorCode::NotAnalytic: return "not_analytic";
        case ErrorCode::OutOfWindow: return "out_of_window";
        case ErrorCode::Unsupported: return "unsupported";
        case ErrorCode::NotAnRM: return "not_an_rm";
        case ErrorCode::DeltaAmbiguity: return "delta_ambiguity";
        case ErrorCode::VerificationFailed: return "verification_failed";
        case ErrorCode::NoLinearFactor: return "no_linear_factor";
        case ErrorCode::NoDegreeToSplit: return "no_degree_to_split";
        case ErrorCode::DegenerateConstantFunctional: return "degenerate_constant_functional";
        case ErrorCode::ChainMismatch: return "chain_mismatch";
        case ErrorCode::ConstraintViolation: return "constraint_violation";
        case ErrorCode::ParseError: return "parse_error";
        case ErrorCode::MixedBackend: return "mixed_backend";
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::Cancelled: return "cancelled";
    }
    return "unknown";
}

std::complex<double> Scalar::to_complex() const {
    if (const auto* q = std::get_if<GaussianRational>(&value_)) {
        return {q->re.get_d(), q->im.get_d()};
    }
    return std::get<std::complex<double>>(value_);
}

Scalar Scalar::conj() const {
    if (const auto* q = std::get_if<GaussianRational>(&value_)) return Scalar(q->re, -q->im);
    return Scalar(std::conj(std::get<std::complex<double>>(value_)));
}

Scalar Scalar::real_part() const {
    if (const auto* q = std::get_if<GaussianRational>(&value_)) return Scalar(q->re, 0);
    return Scalar(std::complex<double>(std::get<std::complex<double>>(value_).real(), 0.0));
}

Scalar Scalar::imag_part() const {
    if (const auto* q = std::get_if<GaussianRational>(&value_)) return Scalar(q->im, 0);
    return Scalar(std::complex<double>(std::get<std::complex<double>>(value_).imag(), 0.0));
}

bool Scalar::is_exact_zero() const {
    if (const auto* q = std::get_if<GaussianRational>(&value_)) return sgn(q->re) == 0 && sgn(q->im) == 0;
    return std::get<std::complex<double>>(value_) == std::complex<double>(0.0, 0.0);
}

bool Scalar::is_zero(const Tolerance& tol) const {
    if (is_exact()) return is_exact_zero();
    return std::abs(std::get<std::complex<double>>(value_)) <= tol.eps;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    if (is_exact() && rhs.is_exact()) {
        auto& a = std::get<GaussianRational>(value_);
        const auto& b = rhs.exact_value();
        a.re += b.re;
        a.im += b.im;
    } else {
        value_ = to_complex() + rhs.to_complex();
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
    if (is_exact() && rhs.is_exact()) {
        auto& a = std::get<GaussianRational>(value_);
        const auto& b = rhs.exact_value();
        a.re -= b.re;
        a.im -= b.im;
    } else {
        value_ = to_complex() - rhs.to_complex();
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
    if (is_exact() && rhs.is_exact()) {
        auto& a = std::get<GaussianRational>(value_);
        const auto& b = rhs.exact_value();
        mpq_class re = a.re * b.re - a.im * b.im;
        mpq_class im = a.re * b.im + a.im * b.re;
        a.re = std::move(re);
        a.im = std::move(im);
    } else {
        value_ = to_complex() * rhs.to_complex();
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
    if (rhs.is_exact_zero()) throw Error(ErrorCode::DivisionByZero, "scalar division by zero");
    if (is_exact() && rhs.is_exact()) {
        auto& a = std::get<GaussianRational>(value_);
        const auto& b = rhs.exact_value();
        mpq_class norm = b.re * b.re + b.im * b.im;
        mpq_class re = (a.re * b.re + a.im * b.im) / norm;
        mpq_class im = (a.im * b.re - a.re * b.im) / norm;
        a.re = std::move(re);
        a.im = std::move(im);
    } else {
        value_ = to_complex() / rhs.to_complex();
    }
    return *this;
}

Scalar Scalar::operator-() const {
    if (const auto* q = std::get_if<GaussianRational>(&value_)) return Scalar(-q->re, -q->im);
    return Scalar(-std::get<std::complex<double>>(value_));
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_exact() != b.is_exact()) return false;
    if (a.is_exact()) {
        return a.exact_value().re == b.exact_value().re && a.exact_value().im == b.exact_value().im;
    }
    return a.to_complex() == b.to_complex();
}

bool approx_equal(const Scalar& a, const Scalar& b, const Tolerance& tol) {
    if (a.is_exact() && b.is_exact()) return a == b;
    return std::abs(a.to_complex() - b.to_complex()) <= tol.eps;
}

Scalar pow(const Scalar& s, int k) {
    Scalar base = s;
    if (k < 0) {
        base = Scalar(1) / s;
        k = -k;
    }
    Scalar result = s.is_exact() ? Scalar(1) : Scalar::approx(1.0);
    while (k > 0) {
        if (k & 1) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

std::string format_decimal(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    std::string s(buf, ptr);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";  // 'n' covers nan/inf
    return s;
}

namespace {

std::string rational_text(const mpq_class& q) {
    return q.get_str();
}

}  // namespace

std::string Scalar::to_string() const {
    if (is_exact()) {
        const auto& q = exact_value();
        const bool has_re = sgn(q.re) != 0;
        const bool has_im = sgn(q.im) != 0;
        if (!has_im) return rational_text(q.re);
        std::string im_text;
        if (q.im == 1) {
            im_text = "i";
        } else if (q.im == -1) {
            im_text = "-i";
        } else {
            im_text = rational_text(q.im) + "i";
        }
        if (!has_re) return im_text;
        if (im_text[0] == '-') return rational_text(q.re) + im_text;
        return rational_text(q.re) + "+" + im_text;
    }
    const auto z = to_complex();
    if (z.imag() == 0.0) return format_decimal(z.real());
    std::string im_text = format_decimal(z.imag()) + "i";
    if (z.real() == 0.0) return im_text;
    if (im_text[0] == '-') return format_decimal(z.real()) + im_text;
    return format_decimal(z.real()) + "+" + im_text;
}

}  // namespace mlst
