#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fraccap/manufactured.hpp"
#include "oracles.hpp"

using namespace fraccap;

namespace {

ManufacturedSolution power_sum(std::vector<double> exps, std::vector<double> orders) {
    ManufacturedSolution sol;
    sol.kind = SolutionKind::power_sum;
    sol.exponents = std::move(exps);
    sol.orders = std::move(orders);
    return sol;
}

ManufacturedSolution oscillatory(double sigma, double omega, double alpha) {
    ManufacturedSolution sol;
    sol.kind = SolutionKind::singular_oscillatory;
    sol.exponents = {sigma};
    sol.frequency = omega;
    sol.orders = {alpha};
    return sol;
}

}  // namespace

TEST_CASE("eval_exact basics") {
    CHECK(eval_exact(power_sum({0.5}, {0.5}), 1.0) == doctest::Approx(1.0));
    CHECK(eval_exact(power_sum({0.1, 0.3}, {0.5}), 0.0) == 0.0);
    // cosine zero at omega t = pi/2
    const auto sol = oscillatory(0.2426481954401539, 10.0 * M_PI, 0.5);
    CHECK(std::abs(eval_exact(sol, 0.05)) <= 1e-15);
}

TEST_CASE("power-sum forcing with matching exponent collapses to a constant") {
    const double alpha = 0.4;
    const auto sol = power_sum({alpha}, {alpha});
    for (double t : {0.01, 0.3, 2.0})
        CHECK(eval_forcing(sol, t) == doctest::Approx(std::tgamma(1.0 + alpha)).epsilon(1e-13));
    CHECK_THROWS_AS(eval_forcing(sol, 0.0), std::invalid_argument);
}

TEST_CASE("multi-term forcing sums the per-order gamma ratios") {
    const std::vector<double> orders{0.3, 0.5, 0.7};
    const auto sol = power_sum({0.9}, orders);
    double expected = 0.0;
    for (double a : orders) expected += oracles::rl_monomial_derivative(0.9, a, 1.0);
    CHECK(eval_forcing(sol, 1.0) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("oscillatory forcing matches the quadrature oracle") {
    const double sigma = 0.2426481954401539, alpha = 0.5, omega = 10.0 * M_PI;
    const auto sol = oscillatory(sigma, omega, alpha);
    auto u_prime = [&](double s) {
        return sigma * std::pow(s, sigma - 1.0) * std::cos(omega * s) -
               omega * std::pow(s, sigma) * std::sin(omega * s);
    };
    for (double t : {0.01, 0.1, 0.5}) {
        const double oracle = oracles::rl_derivative(u_prime, alpha, t);
        CHECK(std::abs(eval_forcing(sol, t) - oracle) <= 1e-8 * std::abs(oracle));
    }
}

TEST_CASE("oscillatory forcing agrees with its truncated power-sum expansion at small t") {
    // t^sigma cos(wt) = t^sigma - (w^2/2) t^{2+sigma} + O(t^{4+sigma})
    const double sigma = 0.2426481954401539, alpha = 0.5, omega = 10.0 * M_PI;
    const auto sol = oscillatory(sigma, omega, alpha);
    const double t = 1e-3;
    const double truncated =
        oracles::rl_monomial_derivative(sigma, alpha, t) -
        0.5 * omega * omega * oracles::rl_monomial_derivative(2.0 + sigma, alpha, t);
    CHECK(std::abs(eval_forcing(sol, t) - truncated) <= 1e-6);
}

TEST_CASE("make_observed feeds a solver run that reproduces the exact solution") {
    // master oracle: integrate with sigma = sigma* reproduces eval_exact
    const auto sol = power_sum({0.15, 0.55}, {0.5});
    const TimeGrid grid(0.02, 50);
    const auto data = make_observed(sol, grid);
    FdeProblem p{sol.orders, 0.0, data.f_data};
    const auto u = integrate(p, SigmaVector(sol.exponents), grid);
    for (int n = 1; n <= grid.steps; ++n)
        CHECK(std::abs(u.values[n] - data.u_data[n - 1]) <=
              1e-11 * std::max(1.0, std::abs(data.u_data[n - 1])));
}

TEST_CASE("random singularity sampling is deterministic and well-spread") {
    const auto a = sample_random_singularities(3, 0.5, 42);
    const auto b = sample_random_singularities(3, 0.5, 42);
    CHECK(a == b);
    const auto c = sample_random_singularities(3, 0.5, 43);
    CHECK(a != c);

    const auto big = sample_random_singularities(10000, 0.5, 7);
    double mean = 0.0;
    for (double v : big) {
        CHECK(v > 0.0);
        CHECK(v < 0.5);
        mean += v;
    }
    mean /= big.size();
    CHECK(std::abs(mean - 0.25) <= 0.01);
    for (size_t i = 1; i < 50; ++i)
        for (size_t j = 0; j < i; ++j) CHECK(std::abs(big[i] - big[j]) >= 1e-6);
}

TEST_CASE("component errors match by the optimal permutation") {
    const auto zero = component_errors({0.1, 0.3}, {0.1, 0.3});
    CHECK(!zero.length_mismatch);
    for (double e : zero.errors) CHECK(e == 0.0);

    // captured in swapped order, as the two-term experiment reports
    const auto swapped = component_errors({0.299974, 0.099990}, {0.1, 0.3});
    CHECK(swapped.errors[0] == doctest::Approx(9.94e-5).epsilon(2e-2));
    CHECK(swapped.errors[1] == doctest::Approx(8.61e-5).epsilon(2e-2));

    const auto triple = component_errors({0.099, 0.498, 0.293}, {0.1, 0.3, 0.5});
    CHECK(triple.errors[0] == doctest::Approx(0.01).epsilon(1e-6));       // |0.1-0.099|/0.1
    CHECK(triple.errors[1] == doctest::Approx(0.07 / 3.0).epsilon(1e-4)); // |0.3-0.293|/0.3
    CHECK(triple.errors[2] == doctest::Approx(0.004).epsilon(1e-6));      // |0.5-0.498|/0.5

    const auto mismatch = component_errors({0.3}, {0.1, 0.3});
    CHECK(mismatch.length_mismatch);
    CHECK(mismatch.errors.size() == 1);
    CHECK(mismatch.errors[0] == 0.0);  // best-matching subset
}

TEST_CASE("manufactured solution validation") {
    ManufacturedSolution bad;
    bad.kind = SolutionKind::singular_oscillatory;
    bad.exponents = {0.1, 0.2};
    bad.orders = {0.5};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    ManufacturedSolution neg;
    neg.exponents = {-0.1};
    neg.orders = {0.5};
    CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
}
