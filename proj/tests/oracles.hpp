// Independent numerical oracles for the test suites. Everything here is
// deliberately built from primitives outside the library under test:
// std::tgamma / std::lgamma for gamma values and tanh-sinh quadrature for
// the convolution integrals (it handles the endpoint singularities of the
// power-law kernels).
#pragma once

#include <cmath>
#include <functional>
#include <random>

namespace oracles {

/// Tanh-sinh quadrature of f over (a, b); integrable endpoint singularities
/// are fine. Doubling levels until two successive estimates agree to rel_tol.
inline double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    auto node_value = [&](double t) -> double {
        const double s = std::sinh(t);
        const double x = std::tanh(M_PI_2 * s);
        const double w = M_PI_2 * std::cosh(t) / std::pow(std::cosh(M_PI_2 * s), 2);
        const double arg = mid + half * x;
        if (arg <= a || arg >= b) return 0.0;  // clamped into the open interval
        return w * f(arg);
    };

    const double tmax = 6.5;
    double h = 1.0;
    double sum = node_value(0.0);
    for (double t = h; t < tmax; t += h) sum += node_value(t) + node_value(-t);
    double prev = half * h * sum;
    for (int level = 1; level <= 12; ++level) {
        h *= 0.5;
        for (double t = h; t < tmax; t += 2.0 * h) sum += node_value(t) + node_value(-t);
        const double cur = half * h * sum;
        if (level >= 3 && std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-30)) return cur;
        prev = cur;
    }
    return prev;
}

/// RL derivative of order alpha of u with u(0) = 0, via the Caputo form
/// (1/Gamma(1-alpha)) int_0^t (t-s)^{-alpha} u'(s) ds.
inline double rl_derivative(const std::function<double(double)>& u_prime, double alpha, double t,
                            double rel_tol = 1e-12) {
    auto integrand = [&](double s) { return std::pow(t - s, -alpha) * u_prime(s); };
    return tanh_sinh(integrand, 0.0, t, rel_tol) / std::tgamma(1.0 - alpha);
}

/// RL integral of order alpha: (1/Gamma(alpha)) int_0^t (t-s)^{alpha-1} u(s) ds.
inline double rl_integral(const std::function<double(double)>& u, double alpha, double t,
                          double rel_tol = 1e-12) {
    auto integrand = [&](double s) { return std::pow(t - s, alpha - 1.0) * u(s); };
    return tanh_sinh(integrand, 0.0, t, rel_tol) / std::tgamma(alpha);
}

/// Closed form D^alpha t^sigma = Gamma(1+sigma)/Gamma(1+sigma-alpha) t^{sigma-alpha},
/// built on std::tgamma only.
inline double rl_monomial_derivative(double sigma, double alpha, double t) {
    return std::tgamma(1.0 + sigma) / std::tgamma(1.0 + sigma - alpha) * std::pow(t, sigma - alpha);
}

/// Deterministic uniform double in [lo, hi).
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

}  // namespace oracles
