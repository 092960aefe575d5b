#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace mlst {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

using Weight = std::function<double(double)>;

/// Panels default: 64 uniform panels on [0, 2 pi) aligned to multiples of
/// pi/2, each panel touching a multiple of pi/2 additionally refined
/// geometrically toward it (endpoint singularities of integrable type).
inline constexpr int kDefaultPanels = 64;

/// (1/2pi) * integral over [0, 2pi) of e^{i n theta} w(theta), composite
/// 8-point Gauss-Legendre. Requires panels >= 16.
std::complex<double> quadrature_moment(const Weight& w, int n, int panels = kDefaultPanels);

/// The same integrals for n = 0..n_max in one sweep over the nodes.
std::vector<std::complex<double>> quadrature_moments(const Weight& w, int n_max, int panels = kDefaultPanels);

}  // namespace mlst
