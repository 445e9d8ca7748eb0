#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraccap/discretization.hpp"
#include "fraccap/grid.hpp"
#include "fraccap/specfun.hpp"

namespace fraccap {

/// Thrown when a computation is numerically unusable (singular or hopelessly
/// ill-conditioned systems), as opposed to invalid arguments.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kSigmaMinSeparation = 1e-8;
inline constexpr double kConditionWarn = 1e13;
inline constexpr double kConditionRefuse = 1e15;

/// Correction exponents sigma_1..sigma_M. Positive, pairwise distinct
/// (duplicate exponents make the Vandermonde system singular).
struct SigmaVector {
    std::vector<double> values;

    SigmaVector() = default;
    explicit SigmaVector(std::vector<double> v) : values(std::move(v)) { validate(); }

    int size() const { return static_cast<int>(values.size()); }

    void validate() const {
        if (values.empty() || values.size() > 9)
            throw std::invalid_argument("SigmaVector: M must lie in 1..9");
        for (double s : values) {
            if (!(s > 0.0) || !std::isfinite(s))
                throw std::invalid_argument("SigmaVector: exponents must be positive and finite");
        }
        for (size_t i = 0; i < values.size(); ++i)
            for (size_t j = 0; j < i; ++j)
                if (std::abs(values[i] - values[j]) < kSigmaMinSeparation)
                    throw std::invalid_argument(
                        "SigmaVector: exponents closer than 1e-8 make the Vandermonde system singular");
    }
};

/// Starting weights W_{j,n} for a given (sigma, alpha, dt); weights(j-1, n-1)
/// multiplies (u_j - u0) in the corrected operator at t_n.
template <class Scalar>
struct CorrectionSet {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> weights;  // M x steps
    std::vector<Scalar> sigma;
    double alpha = 0.0;
    double dt = 0.0;
    double condition_estimate = 0.0;
    double residual_norm = 0.0;
    bool conditioning_warning = false;

    int terms() const { return static_cast<int>(weights.rows()); }
    int steps() const { return static_cast<int>(weights.cols()); }
};

namespace detail {

inline double abs_of(double x) { return std::abs(x); }
inline double abs_of(const std::complex<double>& x) { return std::abs(x); }

template <class Scalar>
double inf_norm_condition(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
    const auto inv = m.inverse().eval();
    auto row_sum_max = [](const auto& a) {
        double best = 0.0;
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            double s = 0.0;
            for (Eigen::Index j = 0; j < a.cols(); ++j) s += abs_of(a(i, j));
            best = std::max(best, s);
        }
        return best;
    };
    return row_sum_max(m) * row_sum_max(inv);
}

}  // namespace detail

/// Solve the Vandermonde system V_{k,j} W_{j,n} = rhs_k(n) for all
/// n = 1..grid.steps, with V_{k,j} = j^{sigma_k} and
///   rhs_k(n) = Gamma(1+sigma_k)/(Gamma(1+sigma_k-alpha) dt^alpha) n^{sigma_k-alpha}
///              - dt^{-sigma_k} * D_disc(t^{sigma_k})|_{t_n}.
/// The factorization is done once; only the right side varies with n.
/// Complex sigma runs the identical pipeline in complex arithmetic (used by
/// the complex-step gradients).
template <class Scalar>
CorrectionSet<Scalar> solve_correction_weights(const std::vector<Scalar>& sigma, double alpha,
                                               const TimeGrid& grid,
                                               const StencilCoefficients& coeffs) {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const int M = static_cast<int>(sigma.size());
    if (M < 1 || M > 9) throw std::invalid_argument("solve_correction_weights: M must lie in 1..9");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("solve_correction_weights: alpha must lie in (0,1)");
    if (coeffs.steps() < grid.steps || coeffs.dt != grid.dt)
        throw std::invalid_argument("solve_correction_weights: coefficients do not match grid");
    for (int i = 0; i < M; ++i) {
        if (!(std::real(Scalar(sigma[i])) > 0.0))
            throw std::invalid_argument("solve_correction_weights: sigma must be positive");
        for (int j = 0; j < i; ++j)
            if (detail::abs_of(sigma[i] - sigma[j]) < kSigmaMinSeparation)
                throw NumericalError("solve_correction_weights: duplicate sigma within tolerance");
    }

    Matrix V(M, M);
    for (int k = 0; k < M; ++k)
        for (int j = 1; j <= M; ++j)
            V(k, j - 1) = std::pow(Scalar(static_cast<double>(j)), sigma[k]);

    CorrectionSet<Scalar> out;
    out.sigma = sigma;
    out.alpha = alpha;
    out.dt = grid.dt;
    out.condition_estimate = detail::inf_norm_condition(V);
    out.conditioning_warning = out.condition_estimate > kConditionWarn;
    if (out.condition_estimate > kConditionRefuse)
        throw NumericalError("solve_correction_weights: Vandermonde condition estimate above 1e15 (M too large or sigma too clustered)");

    const int N = grid.steps;
    const double dt = grid.dt;
    Matrix rhs(M, N);
    std::vector<Scalar> samples(N + 1);
    for (int k = 0; k < M; ++k) {
        const Scalar s = sigma[k];
        samples[0] = Scalar{};
        for (int j = 1; j <= N; ++j) samples[j] = std::pow(Scalar(j * dt), s);
        const Scalar scale = std::pow(Scalar(dt), -s);
        const Scalar gfac = specfun::gamma(Scalar(1.0) + s) /
                            (specfun::gamma(Scalar(1.0) + s - alpha) * std::pow(dt, alpha));
        for (int n = 1; n <= N; ++n) {
            const Scalar exact = gfac * std::pow(Scalar(static_cast<double>(n)), s - alpha);
            const Scalar disc = apply_rl_derivative<Scalar>(samples, coeffs, n);
            rhs(k, n - 1) = exact - scale * disc;
        }
    }

    Eigen::PartialPivLU<Matrix> lu(V);
    out.weights = lu.solve(rhs);

    const Matrix resid = V * out.weights - rhs;
    double worst = 0.0;
    for (int n = 0; n < N; ++n) {
        double col = 0.0;
        for (int k = 0; k < M; ++k) col = std::max(col, detail::abs_of(resid(k, n)));
        worst = std::max(worst, col);
    }
    out.residual_norm = worst;
    return out;
}

inline CorrectionSet<double> solve_correction_weights(const SigmaVector& sigma, double alpha,
                                                      const TimeGrid& grid,
                                                      const StencilCoefficients& coeffs) {
    sigma.validate();
    return solve_correction_weights<double>(sigma.values, alpha, grid, coeffs);
}

/// Closed form for the single-term weight at the first step:
/// W_{1,1} = Gamma(1+sigma)/Gamma(1+sigma-alpha) * dt^{-alpha} - d^{(1)}_1.
double closed_form_w11(double sigma, double alpha, double dt);

/// Element-wise sums of per-order weight sets and stencil families for
/// multi-term equations. All sets must share sigma, dt and steps. A single
/// entry passes through unchanged.
template <class Scalar>
std::pair<CorrectionSet<Scalar>, StencilCoefficients> aggregate_multiterm(
    std::span<const CorrectionSet<Scalar>> weight_sets, std::span<const StencilCoefficients> coeff_sets) {
    if (weight_sets.empty() || weight_sets.size() != coeff_sets.size())
        throw std::invalid_argument("aggregate_multiterm: need one weight set per coefficient family");
    for (size_t l = 1; l < weight_sets.size(); ++l) {
        if (weight_sets[l].steps() != weight_sets[0].steps() ||
            weight_sets[l].terms() != weight_sets[0].terms() ||
            weight_sets[l].dt != weight_sets[0].dt || weight_sets[l].sigma != weight_sets[0].sigma)
            throw std::invalid_argument("aggregate_multiterm: weight sets do not share sigma/dt/steps");
        if (coeff_sets[l].steps() != coeff_sets[0].steps() || coeff_sets[l].dt != coeff_sets[0].dt)
            throw std::invalid_argument("aggregate_multiterm: coefficient families do not share dt/steps");
    }
    if (weight_sets.size() == 1) return {weight_sets[0], coeff_sets[0]};

    CorrectionSet<Scalar> w = weight_sets[0];
    StencilCoefficients c = coeff_sets[0];
    for (size_t l = 1; l < weight_sets.size(); ++l) {
        w.weights += weight_sets[l].weights;
        w.condition_estimate = std::max(w.condition_estimate, weight_sets[l].condition_estimate);
        w.residual_norm = std::max(w.residual_norm, weight_sets[l].residual_norm);
        w.conditioning_warning = w.conditioning_warning || weight_sets[l].conditioning_warning;
        const StencilCoefficients& cl = coeff_sets[l];
        for (int i = 0; i < 2; ++i) c.d1[i] += cl.d1[i];
        for (int i = 0; i < 3; ++i) c.d2[i] += cl.d2[i];
        for (int m = 0; m < c.steps(); ++m) {
            c.b1[m] += cl.b1[m];
            c.b2[m] += cl.b2[m];
            c.b3[m] += cl.b3[m];
            c.a[m] += cl.a[m];
        }
    }
    // the aggregate is not a single-order family; mark the order as unusable
    w.alpha = std::numeric_limits<double>::quiet_NaN();
    c.order = std::numeric_limits<double>::quiet_NaN();
    return {w, c};
}

enum class SigmaRule { alpha_k, tenth_k, custom };

struct ConditionRow {
    int m = 0;
    std::string rule;
    double condition_estimate = 0.0;
};

/// Infinity-norm condition estimates (via the dense inverse) of the M x M
/// Vandermonde matrix for M = 1..max_m under the named exponent rule.
std::vector<ConditionRow> condition_study(SigmaRule rule, double alpha, int max_m,
                                          const std::vector<double>& custom = {});

}  // namespace fraccap
