#pragma once

#include <stdexcept>

namespace fraccap {

/// Uniform grid t_n = n*dt, n = 0..steps, anchored at t_0 = 0.
struct TimeGrid {
    double dt = 0.0;
    int steps = 0;

    TimeGrid() = default;
    TimeGrid(double dt_, int steps_) : dt(dt_), steps(steps_) {
        if (!(dt > 0.0)) throw std::invalid_argument("TimeGrid: dt must be > 0");
        if (steps < 1) throw std::invalid_argument("TimeGrid: steps must be >= 1");
    }

    double node(int n) const { return n * dt; }
    double horizon() const { return steps * dt; }
};

}  // namespace fraccap
