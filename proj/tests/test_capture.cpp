#include <doctest.h>

#include <cmath>
#include <random>

#include "fraccap/capture.hpp"
#include "fraccap/manufactured.hpp"
#include "oracles.hpp"

using namespace fraccap;
using Complex = std::complex<double>;

namespace {

ObservedData power_sum_data(const std::vector<double>& sigma_star, const std::vector<double>& orders,
                            double dt, int steps) {
    ManufacturedSolution sol;
    sol.kind = SolutionKind::power_sum;
    sol.exponents = sigma_star;
    sol.orders = orders;
    return make_observed(sol, TimeGrid(dt, steps));
}

}  // namespace

TEST_CASE("misfit vanishes on self-generated data") {
    const auto data = power_sum_data({0.3}, {0.5}, 0.02, 50);
    CHECK(misfit(SigmaVector({0.3}), data, {0.5}) <= 1e-28);
}

TEST_CASE("misfit is permutation invariant") {
    const auto data = power_sum_data({0.1, 0.3, 0.5}, {0.5}, 0.05, 20);
    const double e1 = misfit(SigmaVector({0.15, 0.42, 0.77}), data, {0.5});
    const double e2 = misfit(SigmaVector({0.77, 0.15, 0.42}), data, {0.5});
    CHECK(std::abs(e1 - e2) <= 1e-13 * std::max(1.0, std::abs(e1)));
}

TEST_CASE("single-term misfit has the intermediate local minimum of two singularities") {
    const auto data = power_sum_data({0.1, 0.3}, {0.5}, 0.01, 100);
    const double at_min = misfit(SigmaVector({0.153}), data, {0.5});
    CHECK(at_min < misfit(SigmaVector({0.10}), data, {0.5}));
    CHECK(at_min < misfit(SigmaVector({0.30}), data, {0.5}));
}

TEST_CASE("two-term misfit has symmetric minima at the true pair") {
    const auto data = power_sum_data({0.1, 0.3}, {0.5}, 0.01, 100);
    CHECK(misfit(SigmaVector({0.1, 0.3}), data, {0.5}) <= 1e-24);
    CHECK(misfit(SigmaVector({0.3, 0.1}), data, {0.5}) <= 1e-24);
    CHECK(misfit(SigmaVector({0.2, 0.4}), data, {0.5}) > 1e-10);
}

TEST_CASE("complex-step gradient vanishes at an exact minimum") {
    const auto data = power_sum_data({0.2, 0.4}, {0.5}, 0.02, 50);
    CaptureConfig cfg;
    const auto g = misfit_gradient(SigmaVector({0.2, 0.4}), data, {0.5}, cfg);
    CHECK(std::hypot(g[0], g[1]) <= 1e-10);
}

TEST_CASE("complex-step gradient agrees with central differences") {
    const auto data = power_sum_data({0.1, 0.3}, {0.5}, 0.02, 50);
    CaptureConfig cfg;
    const std::vector<double> sigma{0.2, 0.4};
    const auto g = misfit_gradient(SigmaVector(sigma), data, {0.5}, cfg);
    const double h = 1e-6;
    for (size_t j = 0; j < sigma.size(); ++j) {
        auto sp = sigma, sm = sigma;
        sp[j] += h;
        sm[j] -= h;
        const double fd = (misfit(SigmaVector(sp), data, {0.5}) -
                           misfit(SigmaVector(sm), data, {0.5})) / (2.0 * h);
        CHECK(std::abs(g[j] - fd) <= 1e-5 * std::abs(fd));
    }
}

TEST_CASE("complex-step gradient is insensitive to the perturbation size") {
    const auto data = power_sum_data({0.1, 0.3}, {0.5}, 0.02, 50);
    const SigmaVector sigma({0.2, 0.4});
    CaptureConfig cfg;
    cfg.cs_perturbation = 1e-12;
    const auto g12 = misfit_gradient(sigma, data, {0.5}, cfg);
    cfg.cs_perturbation = 1e-14;
    const auto g14 = misfit_gradient(sigma, data, {0.5}, cfg);
    cfg.cs_perturbation = 1e-16;
    const auto g16 = misfit_gradient(sigma, data, {0.5}, cfg);
    for (size_t j = 0; j < 2; ++j) {
        CHECK(std::abs(g12[j] - g14[j]) <= 1e-6 * std::abs(g14[j]));
        CHECK(std::abs(g16[j] - g14[j]) <= 1e-6 * std::abs(g14[j]));
    }
}

TEST_CASE("single-step gradient matches the analytic digamma derivative") {
    // closed-form dE/dsigma = -2 psi* P (u1 - P), P = dt^alpha G(1+s-a)/G(1+s) f1
    const double alpha = 0.5, dt = 0.01, s = 0.37;
    const auto data = power_sum_data({0.1, 0.3}, {alpha}, dt, 1);
    CaptureConfig cfg;
    const auto g = misfit_gradient(SigmaVector({s}), data, {alpha}, cfg);

    const double P = std::pow(dt, alpha) * std::tgamma(1.0 + s - alpha) / std::tgamma(1.0 + s) *
                     data.f_data[0];
    const double psi_star = specfun::digamma(1.0 + s - alpha) - specfun::digamma(1.0 + s);
    const double analytic = -2.0 * psi_star * P * (data.u_data[0] - P);
    CHECK(std::abs(g[0] - analytic) <= 1e-8 * std::abs(analytic));
}

TEST_CASE("fixed-M capture reproduces the single-singularity experiment") {
    const auto data = power_sum_data({0.1}, {0.5}, 0.01, 100);
    CaptureConfig cfg;
    const auto trace = capture_fixed_m(data, {0.5}, SigmaVector({cfg.sigma_min}), cfg);
    CHECK(trace.status == CaptureStatus::converged_error);
    CHECK(std::abs(trace.sigma[0] - 0.1) / 0.1 <= 1e-6);
    CHECK(trace.misfit < cfg.tol_error);
}

TEST_CASE("fixed-M capture lands on the intermediate exponents when under-parameterized") {
    CaptureConfig cfg;
    const auto d2 = power_sum_data({0.1, 0.3}, {0.5}, 0.01, 100);
    const auto t2 = capture_fixed_m(d2, {0.5}, SigmaVector({cfg.sigma_min}), cfg);
    CHECK(t2.status == CaptureStatus::converged_gradient);
    CHECK(std::abs(t2.sigma[0] - 0.153) <= 0.02);
    CHECK(t2.grad_norm < cfg.tol_gradient);

    const auto d3 = power_sum_data({0.1, 0.3, 0.5}, {0.5}, 0.01, 100);
    const auto t3 = capture_fixed_m(d3, {0.5}, SigmaVector({cfg.sigma_min}), cfg);
    CHECK(std::abs(t3.sigma[0] - 0.184) <= 0.02);
}

TEST_CASE("two-term capture recovers both exponents") {
    const auto data = power_sum_data({0.1, 0.3}, {0.5}, 0.01, 100);
    CaptureConfig cfg;
    cfg.max_terms = 2;
    const auto result = capture_auto(data, {0.5}, cfg);
    CHECK(result.m_used == 2);
    CHECK(result.final_error < cfg.tol_error);
    const auto errs = component_errors(result.sigma, {0.1, 0.3});
    for (double e : errs.errors) CHECK(e <= 1e-3);
}

TEST_CASE("trace bookkeeping: best-so-far misfit never increases") {
    const auto data = power_sum_data({0.1, 0.3}, {0.5}, 0.02, 40);
    CaptureConfig cfg;
    cfg.max_iterations = 300;
    const auto trace = capture_fixed_m(data, {0.5}, SigmaVector({cfg.sigma_min, 0.5}), cfg);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& row : trace.rows) {
        CHECK(row.misfit >= 0.0);
        best = std::min(best, row.misfit);
        CHECK(row.misfit >= best);
    }
    CHECK(trace.rows.size() <= static_cast<size_t>(cfg.max_iterations));
}

TEST_CASE("hierarchical capture resolves the random-singularity test case") {
    const auto data = power_sum_data(
        {0.0172230402514543, 0.219372179828199, 0.190779228546504}, {0.5}, 1.0 / 3.0, 3);
    CaptureConfig cfg;
    cfg.tol_gradient = 1e-13;
    const auto result = capture_auto(data, {0.5}, cfg);
    CHECK(result.m_used == 2);
    CHECK(result.final_error < 1e-12);
    auto sorted = result.sigma;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::abs(sorted[0] - 0.0187990387914248) <= 5e-3);
    CHECK(std::abs(sorted[1] - 0.206944449676742) <= 5e-3);
}

TEST_CASE("hierarchical capture with a loose tolerance stops at one term") {
    const auto data = power_sum_data({0.5}, {0.5}, 0.01, 50);
    CaptureConfig cfg;
    cfg.tol_error = 1e-12;
    const auto result = capture_auto(data, {0.5}, cfg);
    CHECK(result.m_used == 1);
    CHECK(std::abs(result.sigma[0] - 0.5) <= 1e-4);
}

TEST_CASE("multi-term capture reaches the reported misfit floor") {
    const auto data = power_sum_data(
        {0.13924910943352420, 0.2734407596024919, 0.4787534177171488}, {0.3, 0.5, 0.7},
        1.0 / 3.0, 3);
    CaptureConfig cfg;
    cfg.tol_error = 5e-15;
    const auto result = capture_auto(data, {0.3, 0.5, 0.7}, cfg);
    CHECK(result.final_error <= 1e-13);
    CHECK(result.m_used == 3);
}

TEST_CASE("newton mode captures exact and intermediate exponents") {
    auto run = [&](const std::vector<double>& star, double guess) {
        ObservedData data;
        data.grid = TimeGrid(0.01, 1);
        double u1 = 0.0, f1 = 0.0;
        for (double s : star) {
            u1 += std::pow(0.01, s);
            f1 += oracles::rl_monomial_derivative(s, 0.5, 0.01);
        }
        data.u_data = {u1};
        data.f_data = {f1};
        return newton_single(data, guess, 0.5);
    };

    for (double guess : {0.0001, 1.05}) {
        const auto res = run({0.5}, guess);
        CHECK(res.converged);
        CHECK(res.iterations <= 100);
        CHECK(std::abs(res.sigma - 0.5) < 1e-10);
    }
    for (double guess : {0.0001, 1.1}) {
        const auto res = run({0.1}, guess);
        CHECK(std::abs(res.sigma - 0.1) < 1e-10);
    }
    CHECK(std::abs(run({0.1, 0.2}, 0.001).sigma - 0.1377) <= 0.01);
    CHECK(std::abs(run({0.1, 0.3, 0.5}, 0.001).sigma - 0.1856) <= 0.01);
}

TEST_CASE("newton mode rejects bad inputs and vanishing derivatives") {
    ObservedData two;
    two.grid = TimeGrid(0.01, 2);
    two.u_data = {1.0, 2.0};
    two.f_data = {1.0, 2.0};
    CHECK_THROWS_AS(newton_single(two, 0.5, 0.5), std::invalid_argument);

    // u1 = P(sigma0) makes E and dE vanish at machine level: converges at once
    ObservedData data;
    data.grid = TimeGrid(0.01, 1);
    data.f_data = {1.0};
    const double P = std::pow(0.01, 0.5) * std::tgamma(1.2) / std::tgamma(1.7);
    data.u_data = {P};
    const auto res = newton_single(data, 0.7, 0.5);
    CHECK(res.converged);
    CHECK(res.iterations == 0);
}

TEST_CASE("sigma(dt) study approaches the strongest singularity") {
    const std::vector<double> star{0.1, 0.3, 0.5};
    const std::vector<double> dts{1e-1, 1e-2, 1e-3, 1e-4};
    const auto rows = sigma_vs_dt_study(star, 0.5, dts);
    REQUIRE(rows.size() == dts.size());
    for (const auto& [dt, s] : rows) {
        CHECK(s > 0.1);
        CHECK(s < 0.5);
    }
    CHECK(rows.back().second < rows.front().second);
    CHECK(std::abs(rows.back().second - 0.1) < std::abs(rows.front().second - 0.1));

    // single singularity: exact capture at any dt
    const auto exact_rows = sigma_vs_dt_study({0.3}, 0.5, dts);
    for (const auto& [dt, s] : exact_rows) CHECK(std::abs(s - 0.3) <= 1e-10);
}
