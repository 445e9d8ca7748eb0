#include "fraccap/discretization.hpp"

#include <cmath>

#include "fraccap/specfun.hpp"

namespace fraccap {

double a_coefficient(double order, int j) {
    if (order == 0.0) throw std::invalid_argument("a_coefficient: order must be nonzero");
    if (j < 0) throw std::invalid_argument("a_coefficient: j must be >= 0");
    if (j == 0) {
        if (order < 0.0) throw std::invalid_argument("a_coefficient: j = 0 undefined for negative order");
        return 1.0 / order;
    }
    return (std::pow(j + 1.0, order) - std::pow(static_cast<double>(j), order)) / order;
}

StencilCoefficients build_stencil_family(double order, const TimeGrid& grid) {
    if (!(order > -1.0 && order < 1.0) || order == 0.0)
        throw std::invalid_argument("build_stencil_family: order must lie in (-1,0) or (0,1)");

    using specfun::gamma;
    const double b = order;
    const double dt = grid.dt;
    const double dtb = std::pow(dt, b);

    StencilCoefficients c;
    c.order = b;
    c.dt = dt;
    c.d1 = {b * dtb / gamma(2.0 + b), dtb / gamma(2.0 + b)};
    c.d2 = {-b * dtb / (2.0 * gamma(3.0 + b)), b * (3.0 + b) * dtb / gamma(3.0 + b),
            (4.0 + b) * dtb / (2.0 * gamma(3.0 + b))};

    const int n = grid.steps;
    c.b1.resize(n);
    c.b2.resize(n);
    c.b3.resize(n);
    c.a.resize(n);
    const double g = dtb / gamma(b);
    for (int m = 0; m < n; ++m) {
        const int j = m + 1;
        const double a0 = a_coefficient(b, j);
        const double a1 = a_coefficient(b + 1.0, j);
        const double a2 = a_coefficient(b + 2.0, j);
        c.a[m] = a0;
        c.b1[m] = 0.5 * g * (a2 - (2.0 * m + 1.0) * a1 + m * (m + 1.0) * a0);
        c.b2[m] = -g * (a2 - (2.0 * m + 2.0) * a1 + m * (m + 2.0) * a0);
        c.b3[m] = 0.5 * g * (a2 - (2.0 * m + 3.0) * a1 + (m + 1.0) * (m + 2.0) * a0);
    }
    return c;
}

StencilCoefficients build_coefficients(double alpha, const TimeGrid& grid) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("build_coefficients: alpha must lie in (0,1)");
    return build_stencil_family(-alpha, grid);
}

}  // namespace fraccap
