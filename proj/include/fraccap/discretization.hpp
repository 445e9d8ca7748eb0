#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "fraccap/grid.hpp"

namespace fraccap {

/// Stencil coefficient family for the discretized Riemann-Liouville operator
/// of a given signed order on a uniform grid. The operator at t_n splits into
/// a local part over the most recent panel (piecewise linear at n = 1,
/// quadratic for n > 1) and a history sum of quadratically interpolated
/// panels.
///
/// Derivative families are built at the negated order (-1 < order < 0);
/// `order` stores the signed value actually used. The history arrays are
/// age-indexed: b1[m], b2[m], b3[m] weight u_{n-2-m}, u_{n-1-m}, u_{n-m} for
/// the panel [t_{n-2-m}, t_{n-1-m}], m = 0..n-2. a[m] holds the power-sum
/// integral a^{(order)}_{m+1} the b arrays are assembled from.
struct StencilCoefficients {
    double order = 0.0;
    double dt = 0.0;
    std::array<double, 2> d1{};  // p = 1 local weights for (u_{n-1}, u_n)
    std::array<double, 3> d2{};  // p = 2 local weights for (u_{n-2}, u_{n-1}, u_n)
    std::vector<double> b1, b2, b3;
    std::vector<double> a;

    int steps() const { return static_cast<int>(b1.size()); }
};

/// a^{(order)}_j = ((j+1)^order - j^order) / order, with 0^order = 0. For
/// negative orders j = 0 is outside the domain (0^order diverges).
double a_coefficient(double order, int j);

/// Build the stencil family at a signed order in (-1,0) or (0,1). Positive
/// orders discretize the RL integral, negative ones the RL derivative.
StencilCoefficients build_stencil_family(double order, const TimeGrid& grid);

/// Coefficients for the RL *derivative* of order alpha in (0,1): the family
/// evaluated at the negated order.
StencilCoefficients build_coefficients(double alpha, const TimeGrid& grid);

/// Local sum L^{(n)} u = sum_{j=0}^{p} d^{(p)}_j u_{n+j-p} over a window of
/// p+1 values ending at u_n.
template <class Scalar>
Scalar local_part(std::span<const Scalar> u_window, const StencilCoefficients& c, int p) {
    if (p != 1 && p != 2) throw std::invalid_argument("local_part: p must be 1 or 2");
    if (static_cast<int>(u_window.size()) != p + 1)
        throw std::invalid_argument("local_part: window length must be p+1");
    if (p == 1) return c.d1[0] * u_window[0] + c.d1[1] * u_window[1];
    return c.d2[0] * u_window[0] + c.d2[1] * u_window[1] + c.d2[2] * u_window[2];
}

/// History sum over panels [t_j, t_{j+1}], j = 0..n-2, each reconstructed by
/// the quadratic through (u_j, u_{j+1}, u_{j+2}); the most recent history
/// panel therefore reaches u_n. Zero at n = 1.
template <class Scalar>
Scalar history_part(std::span<const Scalar> u_values, const StencilCoefficients& c, int n) {
    if (n < 1) throw std::invalid_argument("history_part: n must be >= 1");
    if (n == 1) return Scalar{};
    if (static_cast<int>(u_values.size()) < n + 1)
        throw std::invalid_argument("history_part: need values u_0..u_n");
    if (n - 1 > c.steps()) throw std::invalid_argument("history_part: coefficients too short");
    Scalar acc{};
    for (int m = 0; m <= n - 2; ++m)
        acc += c.b1[m] * u_values[n - 2 - m] + c.b2[m] * u_values[n - 1 - m] + c.b3[m] * u_values[n - m];
    return acc;
}

/// Discretized RL operator at t_n: local (p=1 at n=1, p=2 beyond) plus
/// history. With derivative-convention coefficients this approximates the RL
/// derivative of order alpha to O(dt^{3-alpha}).
template <class Scalar>
Scalar apply_rl_derivative(std::span<const Scalar> u_values, const StencilCoefficients& c, int n) {
    if (n < 1) throw std::invalid_argument("apply_rl_derivative: n must be >= 1");
    if (static_cast<int>(u_values.size()) < n + 1)
        throw std::invalid_argument("apply_rl_derivative: need values u_0..u_n");
    const int p = (n == 1) ? 1 : 2;
    Scalar loc = local_part<Scalar>(u_values.subspan(n - p, p + 1), c, p);
    return loc + history_part<Scalar>(u_values, c, n);
}

}  // namespace fraccap
