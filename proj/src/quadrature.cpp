#include "moment_lst/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "moment_lst/errors.hpp"

namespace mlst {

GaussRule gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

namespace {

constexpr int kNodes = 8;
constexpr int kGradingLevels = 16;
constexpr double kGradingRatio = 0.12;

// Panel boundaries on [0, 2pi]: uniform, plus geometric refinement on both
// sides of every multiple of pi/2.
std::vector<double> panel_edges(int panels) {
    if (panels < 16) throw Error(ErrorCode::InvalidArgument, "quadrature needs at least 16 panels");
    panels = (panels + 3) / 4 * 4;
    const double two_pi = 2.0 * std::numbers::pi;
    const double h = two_pi / panels;
    std::vector<double> edges;
    for (int p = 0; p <= panels; ++p) edges.push_back(p * h);
    for (int q = 0; q <= 4; ++q) {
        const double c = q * std::numbers::pi / 2.0;
        double t = h;
        for (int k = 0; k < kGradingLevels; ++k) {
            t *= kGradingRatio;
            if (c - t > 0.0) edges.push_back(c - t);
            if (c + t < two_pi) edges.push_back(c + t);
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

}  // namespace

std::vector<std::complex<double>> quadrature_moments(const Weight& w, int n_max, int panels) {
    static const GaussRule rule = gauss_legendre(kNodes);
    const std::vector<double> edges = panel_edges(panels);
    std::vector<std::complex<double>> acc(static_cast<std::size_t>(n_max + 1));
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double a = edges[e];
        const double b = edges[e + 1];
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        for (int j = 0; j < kNodes; ++j) {
            const double theta = mid + half * rule.nodes[j];
            const double f = w(theta) * rule.weights[j] * half;
            const std::complex<double> step = std::polar(1.0, theta);
            std::complex<double> e_n = 1.0;
            for (int n = 0; n <= n_max; ++n) {
                acc[n] += f * e_n;
                e_n *= step;
            }
        }
    }
    for (auto& a : acc) a /= 2.0 * std::numbers::pi;
    return acc;
}

std::complex<double> quadrature_moment(const Weight& w, int n, int panels) {
    const int m = std::abs(n);
    const auto value = quadrature_moments(w, m, panels)[m];
    return n >= 0 ? value : std::conj(value);
}

}  // namespace mlst
