#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace fraccap::specfun {

/// Euler gamma function on the real line. Poles (non-positive integers)
/// throw std::domain_error; values whose magnitude overflows double throw
/// std::overflow_error. Negative non-integer arguments go through the
/// reflection formula.
double gamma(double z);

/// Gamma for complex arguments. Intended for the complex-step paths where
/// |imag| is infinitesimal; accurate for re(z) bounded away from the poles.
std::complex<double> gamma(std::complex<double> z);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Digamma psi_0(x) for x > 0.
double digamma(double x);

struct HypergeomParams {
    std::vector<double> upper;   // a_1..a_p
    std::vector<double> lower;   // b_1..b_q
    double argument = 0.0;
};

/// Regularized generalized hypergeometric function
///   pFq~(a; b; z) = sum_k prod(a_i)_k / prod Gamma(b_j + k) * z^k / k!
/// Requires p <= q. Non-positive-integer lower parameters are allowed
/// (their reciprocal-gamma factors vanish term-wise). The series stops when
/// the next term falls below 1e-16 of the partial sum, and throws
/// std::runtime_error if max_terms is exhausted first. Working precision is
/// escalated internally for large negative arguments, where the alternating
/// series cancels catastrophically in double.
double reg_hypergeom(const HypergeomParams& params, int max_terms = 500);

}  // namespace fraccap::specfun
