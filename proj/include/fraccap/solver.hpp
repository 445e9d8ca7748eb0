#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "fraccap/corrections.hpp"
#include "fraccap/discretization.hpp"
#include "fraccap/grid.hpp"

namespace fraccap {

/// Single- or multi-term fractional Cauchy problem
///   sum_l D^{alpha_l} u = f(t),  u(0) = u0,
/// posed in Riemann-Liouville form with the Caputo shift folded into the
/// right side. Forcing is consumed as node samples f_n, n = 1..steps.
struct FdeProblem {
    std::vector<double> orders;
    double initial_value = 0.0;
    std::vector<double> forcing;

    void validate(int steps) const {
        if (orders.empty()) throw std::invalid_argument("FdeProblem: needs at least one order");
        for (double a : orders)
            if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("FdeProblem: orders must lie in (0,1)");
        if (static_cast<int>(forcing.size()) != steps)
            throw std::invalid_argument("FdeProblem: forcing must provide one sample per step");
        for (double f : forcing)
            if (!std::isfinite(f)) throw std::invalid_argument("FdeProblem: non-finite forcing sample");
    }
};

template <class Scalar>
struct SolutionSeries {
    TimeGrid grid;
    std::vector<Scalar> values;  // u_0..u_steps, values[0] = u0
};

template <class Scalar>
struct BlockSystem {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> matrix;
    Eigen::Vector<Scalar, Eigen::Dynamic> rhs;
};

namespace detail {

/// Right side of the discrete equation at t_n: the forcing sample plus the
/// Caputo-to-RL rewrite shift u0 * sum_l t_n^{-alpha_l} / Gamma(1 - alpha_l).
inline double rewrite_rhs(const FdeProblem& p, double dt, int n) {
    double g = p.forcing[n - 1];
    if (p.initial_value != 0.0) {
        const double t = n * dt;
        for (double a : p.orders)
            g += p.initial_value * std::pow(t, -a) / specfun::gamma(1.0 - a);
    }
    return g;
}

}  // namespace detail

/// Assemble the m x m implicit system coupling the first m time-steps
/// (p = 1 stencil in row one, p = 2 beyond, correction weights throughout).
/// u0 couplings are moved to the right side. An empty correction set (no
/// terms) yields the lower-triangular uncorrected matrix.
template <class Scalar>
BlockSystem<Scalar> assemble_block_system(const FdeProblem& problem,
                                          const CorrectionSet<Scalar>& corrections,
                                          const StencilCoefficients& coeffs, int m) {
    const int M = corrections.terms();
    if (m < 1 || m > 9) throw std::invalid_argument("assemble_block_system: m must lie in 1..9");
    if (M > m) throw std::invalid_argument("assemble_block_system: m must cover all correction terms");
    if (static_cast<int>(problem.forcing.size()) < m)
        throw std::invalid_argument("assemble_block_system: forcing shorter than block");
    if (coeffs.steps() < m - 1)
        throw std::invalid_argument("assemble_block_system: coefficients shorter than block");
    if (M > 0 && corrections.steps() < m)
        throw std::invalid_argument("assemble_block_system: weights shorter than block");

    BlockSystem<Scalar> sys;
    sys.matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(m, m);
    sys.rhs = Eigen::Vector<Scalar, Eigen::Dynamic>::Zero(m);
    const Scalar u0{problem.initial_value};

    for (int n = 1; n <= m; ++n) {
        Scalar rhs{detail::rewrite_rhs(problem, coeffs.dt, n)};
        auto couple = [&](int node, Scalar w) {
            if (node == 0)
                rhs -= w * u0;
            else
                sys.matrix(n - 1, node - 1) += w;
        };
        if (n == 1) {
            couple(0, Scalar{coeffs.d1[0]});
            couple(1, Scalar{coeffs.d1[1]});
        } else {
            for (int j = 0; j < 3; ++j) couple(n - 2 + j, Scalar{coeffs.d2[j]});
            for (int age = 0; age <= n - 2; ++age) {
                couple(n - 2 - age, Scalar{coeffs.b1[age]});
                couple(n - 1 - age, Scalar{coeffs.b2[age]});
                couple(n - age, Scalar{coeffs.b3[age]});
            }
        }
        for (int j = 1; j <= M; ++j) {
            const Scalar w = corrections.weights(j - 1, n - 1);
            couple(j, w);
            rhs += w * u0;
        }
        sys.rhs(n - 1) = rhs;
    }
    return sys;
}

/// Implicit time integration with corrections: block solve over the first
/// min(max(M,3), steps) steps, then marching. Fully generic over the scalar
/// so the complex-step misfit runs the identical pipeline.
template <class Scalar>
SolutionSeries<Scalar> integrate_prepared(const FdeProblem& problem,
                                          const std::vector<Scalar>& sigma, const TimeGrid& grid,
                                          std::span<const StencilCoefficients> per_order_coeffs) {
    problem.validate(grid.steps);
    if (per_order_coeffs.size() != problem.orders.size())
        throw std::invalid_argument("integrate: one coefficient family per order required");
    const int M = static_cast<int>(sigma.size());
    if (M > grid.steps)
        throw std::invalid_argument("integrate: grid too short for the correction count");

    CorrectionSet<Scalar> weights;
    StencilCoefficients coeffs;
    if (problem.orders.size() == 1 && M == 0) {
        coeffs = per_order_coeffs[0];
    } else {
        std::vector<CorrectionSet<Scalar>> wsets;
        std::vector<StencilCoefficients> csets(per_order_coeffs.begin(), per_order_coeffs.end());
        if (M > 0) {
            wsets.reserve(problem.orders.size());
            for (size_t l = 0; l < problem.orders.size(); ++l)
                wsets.push_back(solve_correction_weights<Scalar>(sigma, problem.orders[l], grid,
                                                                 per_order_coeffs[l]));
            auto [w, c] = aggregate_multiterm<Scalar>(wsets, csets);
            weights = std::move(w);
            coeffs = std::move(c);
        } else {
            coeffs = csets[0];
            for (size_t l = 1; l < csets.size(); ++l) {
                for (int i = 0; i < 2; ++i) coeffs.d1[i] += csets[l].d1[i];
                for (int i = 0; i < 3; ++i) coeffs.d2[i] += csets[l].d2[i];
                for (int mm = 0; mm < coeffs.steps(); ++mm) {
                    coeffs.b1[mm] += csets[l].b1[mm];
                    coeffs.b2[mm] += csets[l].b2[mm];
                    coeffs.b3[mm] += csets[l].b3[mm];
                    coeffs.a[mm] += csets[l].a[mm];
                }
            }
        }
    }

    SolutionSeries<Scalar> sol;
    sol.grid = grid;
    sol.values.assign(grid.steps + 1, Scalar{});
    sol.values[0] = Scalar{problem.initial_value};

    const int m_block = std::min(std::max(M, 3), grid.steps);
    {
        auto sys = assemble_block_system<Scalar>(problem, weights, coeffs, m_block);
        Eigen::PartialPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> lu(sys.matrix);
        Eigen::Vector<Scalar, Eigen::Dynamic> x = lu.solve(sys.rhs);
        const double resid = (sys.matrix * x - sys.rhs).cwiseAbs().maxCoeff();
        const double scale = sys.matrix.cwiseAbs().maxCoeff() * x.cwiseAbs().maxCoeff() +
                             sys.rhs.cwiseAbs().maxCoeff();
        if (!std::isfinite(resid) || resid > 1e-8 * std::max(scale, 1e-300))
            throw NumericalError("integrate: singular or ill-conditioned block system");
        for (int n = 1; n <= m_block; ++n) sol.values[n] = x(n - 1);
    }

    const double denom = coeffs.d2[2] + coeffs.b3[0];
    if (!(std::abs(denom) > 0.0))
        throw NumericalError("integrate: vanishing implicit coefficient d2[2] + b3[0]");
    const Scalar u0{problem.initial_value};
    for (int n = m_block + 1; n <= grid.steps; ++n) {
        Scalar acc{detail::rewrite_rhs(problem, grid.dt, n)};
        acc -= coeffs.d2[0] * sol.values[n - 2] + coeffs.d2[1] * sol.values[n - 1];
        // most recent history panel holds the unknown u_n via b3[0]
        acc -= coeffs.b1[0] * sol.values[n - 2] + coeffs.b2[0] * sol.values[n - 1];
        for (int age = 1; age <= n - 2; ++age)
            acc -= coeffs.b1[age] * sol.values[n - 2 - age] + coeffs.b2[age] * sol.values[n - 1 - age] +
                   coeffs.b3[age] * sol.values[n - age];
        for (int j = 1; j <= M; ++j) acc -= weights.weights(j - 1, n - 1) * (sol.values[j] - u0);
        sol.values[n] = acc / denom;
    }
    return sol;
}

/// Convenience entry point building the per-order coefficient families.
template <class Scalar>
SolutionSeries<Scalar> integrate_scalar(const FdeProblem& problem, const std::vector<Scalar>& sigma,
                                        const TimeGrid& grid) {
    problem.validate(grid.steps);
    std::vector<StencilCoefficients> coeffs;
    coeffs.reserve(problem.orders.size());
    for (double a : problem.orders) coeffs.push_back(build_coefficients(a, grid));
    return integrate_prepared<Scalar>(problem, sigma, grid, coeffs);
}

/// Public real-valued entry point per the library surface.
SolutionSeries<double> integrate(const FdeProblem& problem, const std::optional<SigmaVector>& sigma,
                                 const TimeGrid& grid);

/// || numeric - exact ||_2 / || exact ||_2 over the sampled nodes.
double l2_relative_error(const SolutionSeries<double>& numeric, std::span<const double> exact);

}  // namespace fraccap
