#pragma once

#include <cstdint>
#include <vector>

#include "fraccap/capture.hpp"
#include "fraccap/grid.hpp"

namespace fraccap {

enum class SolutionKind { power_sum, singular_oscillatory };

/// Fabricated exact solutions driving the experiments:
///   power_sum:            u(t) = sum_j t^{sigma*_j}
///   singular_oscillatory: u(t) = t^{sigma*} cos(omega t)
/// `orders` lists the fractional orders the forcing is generated for.
struct ManufacturedSolution {
    SolutionKind kind = SolutionKind::power_sum;
    std::vector<double> exponents;
    double frequency = 0.0;
    std::vector<double> orders;

    void validate() const;
};

double eval_exact(const ManufacturedSolution& sol, double t);

/// Forcing f(t) = sum_l D^{alpha_l} u(t), evaluated in closed form. The
/// power-sum family uses the Gamma-ratio monomial derivatives; the
/// oscillatory family uses the regularized 2F3 closed form of the RL
/// derivative of t^sigma cos(omega t).
double eval_forcing(const ManufacturedSolution& sol, double t);

/// Deterministic uniform draws in (0, upper) with min pairwise separation
/// 1e-6 (resampled on collision). The generator is mt19937_64 with doubles
/// formed from the top 53 bits, so identical seeds give identical draws on
/// every platform.
std::vector<double> sample_random_singularities(int count, double upper, std::uint64_t seed);

struct ComponentErrors {
    std::vector<double> errors;  // per matched truth component
    bool length_mismatch = false;
};

/// Component-wise relative errors |sigma*_j - sigma_j| / |sigma*_j| after
/// matching captured components to the truth by the permutation minimizing
/// the largest error. When sizes differ the best-matching subset is scored
/// and the mismatch flagged.
ComponentErrors component_errors(const std::vector<double>& captured,
                                 const std::vector<double>& truth);

/// Sample (u, f) data for Stage-I on a short grid.
ObservedData make_observed(const ManufacturedSolution& sol, const TimeGrid& grid);

}  // namespace fraccap
