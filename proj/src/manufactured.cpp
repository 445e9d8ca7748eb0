#include "fraccap/manufactured.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fraccap/specfun.hpp"

namespace fraccap {

void ManufacturedSolution::validate() const {
    if (exponents.empty()) throw std::invalid_argument("ManufacturedSolution: needs exponents");
    for (double s : exponents)
        if (!(s > 0.0)) throw std::invalid_argument("ManufacturedSolution: exponents must be > 0");
    if (kind == SolutionKind::singular_oscillatory && exponents.size() != 1)
        throw std::invalid_argument("ManufacturedSolution: oscillatory kind takes a single exponent");
    if (orders.empty()) throw std::invalid_argument("ManufacturedSolution: needs fractional orders");
    for (double a : orders)
        if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("ManufacturedSolution: orders must lie in (0,1)");
}

double eval_exact(const ManufacturedSolution& sol, double t) {
    sol.validate();
    if (t < 0.0) throw std::invalid_argument("eval_exact: t must be >= 0");
    if (sol.kind == SolutionKind::power_sum) {
        double u = 0.0;
        for (double s : sol.exponents) u += std::pow(t, s);
        return u;
    }
    return std::pow(t, sol.exponents[0]) * std::cos(sol.frequency * t);
}

namespace {

// RL derivative of t^sigma cos(w t) of order alpha:
//   2^{alpha-sigma} pi Gamma(1+sigma) t^{sigma-alpha}
//     * 2F3~((1+sigma)/2, (2+sigma)/2; 1/2, (1+sigma-alpha)/2, (2+sigma-alpha)/2; -w^2 t^2/4)
double oscillatory_forcing_term(double sigma, double alpha, double w, double t) {
    const double z = -0.25 * w * w * t * t;
    specfun::HypergeomParams p;
    p.upper = {0.5 * (1.0 + sigma), 0.5 * (2.0 + sigma)};
    p.lower = {0.5, 0.5 * (1.0 + sigma - alpha), 0.5 * (2.0 + sigma - alpha)};
    p.argument = z;
    // the alternating series needs ~e*sqrt|z| terms before it decays
    const int terms = std::max(500, static_cast<int>(3.0 * std::sqrt(std::abs(z))) + 100);
    const double f = specfun::reg_hypergeom(p, terms);
    return std::pow(2.0, alpha - sigma) * M_PI * specfun::gamma(1.0 + sigma) *
           std::pow(t, sigma - alpha) * f;
}

}  // namespace

double eval_forcing(const ManufacturedSolution& sol, double t) {
    sol.validate();
    if (!(t > 0.0)) throw std::invalid_argument("eval_forcing: t must be > 0");
    double f = 0.0;
    if (sol.kind == SolutionKind::power_sum) {
        for (double a : sol.orders)
            for (double s : sol.exponents)
                f += specfun::gamma(1.0 + s) / specfun::gamma(1.0 + s - a) * std::pow(t, s - a);
    } else {
        for (double a : sol.orders) f += oscillatory_forcing_term(sol.exponents[0], a, sol.frequency, t);
    }
    return f;
}

std::vector<double> sample_random_singularities(int count, double upper, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample_random_singularities: count must be >= 1");
    if (!(upper > 0.0)) throw std::invalid_argument("sample_random_singularities: upper must be > 0");
    std::mt19937_64 rng(seed);
    auto draw = [&]() {
        // top 53 bits -> [0,1); identical across platforms, unlike
        // uniform_real_distribution
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    std::vector<double> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        const double v = draw() * upper;
        if (v <= 0.0) continue;
        bool clash = false;
        for (double w : out) clash = clash || std::abs(v - w) < 1e-6;
        if (!clash) out.push_back(v);
    }
    return out;
}

ComponentErrors component_errors(const std::vector<double>& captured,
                                 const std::vector<double>& truth) {
    if (captured.empty() || truth.empty())
        throw std::invalid_argument("component_errors: empty input");
    ComponentErrors out;
    out.length_mismatch = captured.size() != truth.size();
    const size_t m = std::min(captured.size(), truth.size());
    const bool permute_captured = captured.size() >= truth.size();

    // assignment minimizing the worst relative error; permuting the longer
    // list covers every subset pairing (sizes are tiny, brute force)
    std::vector<size_t> idx(permute_captured ? captured.size() : truth.size());
    std::iota(idx.begin(), idx.end(), 0);
    double best_max = std::numeric_limits<double>::infinity();
    std::vector<double> best(m, std::numeric_limits<double>::infinity());
    do {
        std::vector<double> errs(m);
        double worst = 0.0;
        for (size_t j = 0; j < m; ++j) {
            const double truth_j = permute_captured ? truth[j] : truth[idx[j]];
            const double cap_j = permute_captured ? captured[idx[j]] : captured[j];
            errs[j] = std::abs(truth_j - cap_j) / std::abs(truth_j);
            worst = std::max(worst, errs[j]);
        }
        if (worst < best_max) {
            best_max = worst;
            best = errs;
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    out.errors = std::move(best);
    return out;
}

ObservedData make_observed(const ManufacturedSolution& sol, const TimeGrid& grid) {
    ObservedData data;
    data.grid = grid;
    data.u0 = 0.0;
    data.u_data.resize(grid.steps);
    data.f_data.resize(grid.steps);
    for (int n = 1; n <= grid.steps; ++n) {
        data.u_data[n - 1] = eval_exact(sol, grid.node(n));
        data.f_data[n - 1] = eval_forcing(sol, grid.node(n));
    }
    return data;
}

}  // namespace fraccap
