#include "fraccap/capture.hpp"

#include <algorithm>
#include <cmath>

#include "fraccap/specfun.hpp"

namespace fraccap {

namespace {

using Complex = std::complex<double>;

template <class Scalar>
Scalar misfit_impl(std::span<const Scalar> sigma, const ObservedData& data,
                   const std::vector<double>& orders,
                   std::span<const StencilCoefficients> coeffs) {
    FdeProblem problem{orders, data.u0, data.f_data};
    std::vector<Scalar> s(sigma.begin(), sigma.end());
    auto sol = integrate_prepared<Scalar>(problem, s, data.grid, coeffs);
    Scalar acc{};
    for (int n = 1; n <= data.grid.steps; ++n) {
        const Scalar r = Scalar{data.u_data[n - 1]} - sol.values[n];
        acc += r * r;
    }
    return acc;
}

std::vector<StencilCoefficients> build_families(const std::vector<double>& orders,
                                                const TimeGrid& grid) {
    std::vector<StencilCoefficients> out;
    out.reserve(orders.size());
    for (double a : orders) out.push_back(build_coefficients(a, grid));
    return out;
}

std::vector<double> gradient_impl(std::span<const double> sigma, const ObservedData& data,
                                  const std::vector<double>& orders,
                                  std::span<const StencilCoefficients> coeffs, double ds) {
    if (!(ds > 0.0)) throw std::invalid_argument("misfit_gradient: perturbation must be > 0");
    std::vector<double> g(sigma.size());
    std::vector<Complex> sc(sigma.begin(), sigma.end());
    for (size_t j = 0; j < sigma.size(); ++j) {
        sc[j] = Complex(sigma[j], ds);
        g[j] = misfit_impl<Complex>(sc, data, orders, coeffs).imag() / ds;
        sc[j] = Complex(sigma[j], 0.0);
    }
    return g;
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Clamp into [sigma_min, sigma_max] and nudge components apart so the
// Vandermonde solve stays regular.
void clamp_separate(std::vector<double>& s, const CaptureConfig& cfg) {
    for (double& x : s) x = std::clamp(x, cfg.sigma_min, cfg.sigma_max);
    for (size_t i = 0; i < s.size(); ++i) {
        bool moved = true;
        while (moved) {
            moved = false;
            for (size_t j = 0; j < i; ++j) {
                if (std::abs(s[i] - s[j]) < kSigmaMinSeparation) {
                    s[i] = std::min(s[i] + 1e-6, cfg.sigma_max);
                    if (std::abs(s[i] - s[j]) < kSigmaMinSeparation) s[i] = s[j] + 1e-6;
                    moved = true;
                }
            }
        }
    }
}

}  // namespace

const char* to_string(CaptureStatus s) {
    switch (s) {
        case CaptureStatus::converged_error: return "converged_error";
        case CaptureStatus::converged_gradient: return "converged_gradient";
        case CaptureStatus::max_iterations: return "max_iterations";
    }
    return "unknown";
}

double misfit(const SigmaVector& sigma, const ObservedData& data, const std::vector<double>& orders) {
    data.validate();
    sigma.validate();
    auto coeffs = build_families(orders, data.grid);
    return misfit_impl<double>(sigma.values, data, orders, coeffs);
}

Complex misfit(std::span<const Complex> sigma, const ObservedData& data,
               const std::vector<double>& orders) {
    data.validate();
    auto coeffs = build_families(orders, data.grid);
    return misfit_impl<Complex>(sigma, data, orders, coeffs);
}

std::vector<double> misfit_gradient(const SigmaVector& sigma, const ObservedData& data,
                                    const std::vector<double>& orders, const CaptureConfig& config) {
    data.validate();
    sigma.validate();
    auto coeffs = build_families(orders, data.grid);
    return gradient_impl(sigma.values, data, orders, coeffs, config.cs_perturbation);
}

CaptureTrace capture_fixed_m(const ObservedData& data, const std::vector<double>& orders,
                             const SigmaVector& sigma0, const CaptureConfig& config) {
    data.validate();
    const int M = sigma0.size();
    if (M > data.grid.steps)
        throw std::invalid_argument("capture_fixed_m: needs at least M data points");
    auto coeffs = build_families(orders, data.grid);

    CaptureTrace trace;
    std::vector<double> s = sigma0.values;
    clamp_separate(s, config);
    double E = misfit_impl<double>(s, data, orders, coeffs);

    bool converged = false;
    std::vector<double> s_prev, g_prev;
    for (int k = 0; k < config.max_iterations; ++k) {
        if (!std::isfinite(E)) throw NumericalError("capture_fixed_m: non-finite misfit");
        if (E < config.tol_error) {
            trace.status = CaptureStatus::converged_error;
            trace.rows.push_back({k, s, E, 0.0, 0.0});
            converged = true;
            break;
        }
        auto g = gradient_impl(s, data, orders, coeffs, config.cs_perturbation);
        const double gn = norm2(g);
        if (!std::isfinite(gn)) throw NumericalError("capture_fixed_m: non-finite gradient");
        if (gn < config.tol_gradient) {
            trace.status = CaptureStatus::converged_gradient;
            trace.rows.push_back({k, s, E, gn, 0.0});
            converged = true;
            break;
        }

        // Barzilai-Borwein two-point step; the first move uses gamma^0, and
        // degenerate or negative steps fall back to it as well
        double step = config.initial_step;
        if (!s_prev.empty()) {
            double sy = 0.0, yy = 0.0;
            for (int i = 0; i < M; ++i) {
                const double ds = s[i] - s_prev[i];
                const double dg = g[i] - g_prev[i];
                sy += ds * dg;
                yy += dg * dg;
            }
            if (yy > 1e-30) {
                const double bb = sy / yy;
                if (std::isfinite(bb) && bb > 0.0) step = bb;
            }
        }

        trace.rows.push_back({k, s, E, gn, step});
        s_prev = s;
        g_prev = g;
        for (int i = 0; i < M; ++i) s[i] -= step * g[i];
        clamp_separate(s, config);
        E = misfit_impl<double>(s, data, orders, coeffs);
    }

    if (converged) {
        const auto& last = trace.rows.back();
        trace.sigma = last.sigma;
        trace.misfit = last.misfit;
        trace.grad_norm = last.grad_norm;
        trace.iterations = last.k;
    } else {
        // iteration cap: summarize the post-update iterate without growing
        // the trace past max_iterations rows
        trace.status = CaptureStatus::max_iterations;
        trace.sigma = s;
        trace.misfit = E;
        trace.grad_norm = norm2(gradient_impl(s, data, orders, coeffs, config.cs_perturbation));
        trace.iterations = config.max_iterations;
    }
    return trace;
}

CaptureResult capture_auto(const ObservedData& data, const std::vector<double>& orders,
                           const CaptureConfig& config) {
    data.validate();
    if (config.max_terms < 1 || config.max_terms > 3)
        throw std::invalid_argument("capture_auto: max_terms must lie in 1..3");

    CaptureResult result;
    std::vector<double> guess{config.sigma_min};
    for (int m = 1; m <= config.max_terms; ++m) {
        auto trace = capture_fixed_m(data, orders, SigmaVector(guess), config);
        result.traces.push_back(trace);
        result.sigma = trace.sigma;
        result.m_used = m;
        result.final_error = trace.misfit;
        if (trace.status == CaptureStatus::converged_error) break;
        if (m == 1) {
            guess = {config.m2_guess_high ? 1.0 : config.sigma_min, trace.sigma[0]};
        } else if (m == 2) {
            guess = {trace.sigma[0], trace.sigma[1], 0.5 * (trace.sigma[0] + trace.sigma[1])};
        }
    }
    return result;
}

NewtonResult newton_single(const ObservedData& data, double sigma0, double alpha, double tol,
                           int max_iterations) {
    data.validate();
    if (data.grid.steps != 1) throw std::invalid_argument("newton_single: needs exactly one data point");
    if (data.u0 != 0.0) throw std::invalid_argument("newton_single: requires u0 = 0");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("newton_single: alpha must lie in (0,1)");

    const double dt = data.grid.dt;
    const double u1 = data.u_data[0];
    const double f1 = data.f_data[0];
    using specfun::digamma;
    using specfun::gamma;

    NewtonResult out;
    double s = sigma0;
    for (int k = 0; k < max_iterations; ++k) {
        const double P = std::pow(dt, alpha) * gamma(1.0 + s - alpha) / gamma(1.0 + s) * f1;
        const double r = u1 - P;
        const double E = r * r;
        out.trace.push_back({k, s, E});
        out.sigma = s;
        out.misfit = E;
        out.iterations = k;
        if (E < tol) {
            out.converged = true;
            return out;
        }
        const double psi_star = digamma(1.0 + s - alpha) - digamma(1.0 + s);
        const double dE = -2.0 * psi_star * P * r;
        if (std::abs(dE) < 1e-300)
            throw NumericalError("newton_single: derivative of the misfit vanished");
        s -= E / dE;
    }
    return out;
}

std::vector<std::pair<double, double>> sigma_vs_dt_study(const std::vector<double>& sigma_star,
                                                         double alpha,
                                                         const std::vector<double>& dt_values) {
    if (sigma_star.empty()) throw std::invalid_argument("sigma_vs_dt_study: empty sigma_star");
    std::vector<std::pair<double, double>> rows;
    rows.reserve(dt_values.size());
    for (double dt : dt_values) {
        ObservedData data;
        data.grid = TimeGrid(dt, 1);
        double u1 = 0.0, f1 = 0.0;
        for (double s : sigma_star) {
            u1 += std::pow(dt, s);
            f1 += specfun::gamma(1.0 + s) / specfun::gamma(1.0 + s - alpha) * std::pow(dt, s - alpha);
        }
        data.u_data = {u1};
        data.f_data = {f1};
        auto res = newton_single(data, 1e-4, alpha);
        rows.emplace_back(dt, res.sigma);
    }
    return rows;
}

}  // namespace fraccap
