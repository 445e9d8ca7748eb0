#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fraccap/grid.hpp"
#include "fraccap/solver.hpp"

namespace fraccap {

/// Short-time observations feeding Stage-I: solution and forcing samples at
/// t_1..t_N~ plus the initial value.
struct ObservedData {
    std::vector<double> u_data;
    std::vector<double> f_data;
    double u0 = 0.0;
    TimeGrid grid;

    void validate() const {
        if (static_cast<int>(u_data.size()) != grid.steps ||
            static_cast<int>(f_data.size()) != grid.steps)
            throw std::invalid_argument("ObservedData: need one (u, f) sample per step");
    }
};

struct CaptureConfig {
    double tol_error = 1e-15;        // epsilon, on E(sigma)
    double tol_gradient = 1e-14;     // epsilon_1, on ||grad E||
    double cs_perturbation = 1e-14;  // complex-step delta sigma
    double initial_step = 1e-3;      // gamma^0
    int max_iterations = 5000;
    int max_terms = 3;
    bool m2_guess_high = false;  // escalation guess [1, sigma_1] instead of [sigma_min, sigma_1]
    double sigma_min = 1e-4;
    double sigma_max = 5.0;
};

enum class CaptureStatus { converged_error, converged_gradient, max_iterations };

const char* to_string(CaptureStatus s);

struct CaptureTraceRow {
    int k = 0;
    std::vector<double> sigma;
    double misfit = 0.0;
    double grad_norm = 0.0;
    double step = 0.0;  // gamma^k applied to move to iterate k+1 (0 on the final row)
};

struct CaptureTrace {
    std::vector<CaptureTraceRow> rows;
    CaptureStatus status = CaptureStatus::max_iterations;
    std::vector<double> sigma;
    double misfit = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
};

struct CaptureResult {
    std::vector<double> sigma;
    int m_used = 0;
    double final_error = 0.0;
    std::vector<CaptureTrace> traces;  // one per M tried
};

/// Misfit E(sigma) = sum_n (u^data_n - u^N_n(sigma))^2 with u^N produced by
/// the corrected implicit scheme driven by the observed forcing.
double misfit(const SigmaVector& sigma, const ObservedData& data, const std::vector<double>& orders);

/// Complex-sigma misfit for the complex-step path; the squares are complex
/// squares (not magnitudes), keeping E analytic in sigma.
std::complex<double> misfit(std::span<const std::complex<double>> sigma, const ObservedData& data,
                            const std::vector<double>& orders);

/// Complex-step gradient: component j = Im E(sigma + i*ds*e_j) / ds.
std::vector<double> misfit_gradient(const SigmaVector& sigma, const ObservedData& data,
                                    const std::vector<double>& orders, const CaptureConfig& config);

/// Barzilai-Borwein descent at fixed correction count M = sigma0.size().
/// Stops on E < tol_error, ||grad|| < tol_gradient, or the iteration cap;
/// iterates are clamped to [sigma_min, sigma_max] and kept pairwise separated.
CaptureTrace capture_fixed_m(const ObservedData& data, const std::vector<double>& orders,
                             const SigmaVector& sigma0, const CaptureConfig& config);

/// Hierarchical escalation over M = 1..max_terms with the escalation initial
/// guesses [sigma_min, s1] (or [1, s1]) and [s1, s2, (s1+s2)/2]; returns at
/// the first M reaching E < tol_error, else the last attempt.
CaptureResult capture_auto(const ObservedData& data, const std::vector<double>& orders,
                           const CaptureConfig& config);

struct NewtonTraceRow {
    int k = 0;
    double sigma = 0.0;
    double misfit = 0.0;
};

struct NewtonResult {
    double sigma = 0.0;
    double misfit = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<NewtonTraceRow> trace;
};

/// Single-step, single-term capture: Newton iteration on the closed-form
/// misfit E(sigma) = (u1 - dt^alpha Gamma(1+sigma-alpha)/Gamma(1+sigma) f1)^2
/// with the analytic digamma derivative. Requires u0 = 0 and one data point.
/// The default tolerance sits at the squared machine floor so sigma is
/// resolved to ~1e-13 rather than the ~1e-6 a 1e-15 threshold would allow.
NewtonResult newton_single(const ObservedData& data, double sigma0, double alpha,
                           double tol = 1e-28, int max_iterations = 100);

/// Converged Newton sigma as a function of dt for data fabricated from
/// u = sum t^{sigma*_j}; rows are (dt, sigma).
std::vector<std::pair<double, double>> sigma_vs_dt_study(const std::vector<double>& sigma_star,
                                                         double alpha,
                                                         const std::vector<double>& dt_values);

}  // namespace fraccap
