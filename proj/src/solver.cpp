#include "fraccap/solver.hpp"

#include <cmath>

namespace fraccap {

SolutionSeries<double> integrate(const FdeProblem& problem, const std::optional<SigmaVector>& sigma,
                                 const TimeGrid& grid) {
    std::vector<double> s;
    if (sigma) {
        sigma->validate();
        s = sigma->values;
    }
    return integrate_scalar<double>(problem, s, grid);
}

double l2_relative_error(const SolutionSeries<double>& numeric, std::span<const double> exact) {
    if (exact.size() != numeric.values.size())
        throw std::invalid_argument("l2_relative_error: length mismatch");
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < exact.size(); ++i) {
        const double d = numeric.values[i] - exact[i];
        num += d * d;
        den += exact[i] * exact[i];
    }
    if (den == 0.0) throw std::invalid_argument("l2_relative_error: exact solution is identically zero");
    return std::sqrt(num / den);
}

}  // namespace fraccap
