// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stargraph/model.hpp"

namespace stargraph
{

// Large-M approximations of the offset eps_n(beta, M) = lambda - (M + 1/2) pi of the
// branch-n root in window M. Fractional powers use the principal branch; the branch
// multiplicity is carried by the explicit phase exp(-i pi (1/2 + 2n/p)).

enum class EstimateOrder
{
  first,
  second,
  iterated,
};

std::string to_string(EstimateOrder o);

struct AsymptoticEstimate
{
  int window = 0;
  int branch = 0;
  EstimateOrder order = EstimateOrder::first;
  int iterations = 0;  // iterated only
  complex epsilon;
  // Exponent e of the claimed relative error O(M^e); none for iterated refinement.
  std::optional<double> claimed_rel_error_exponent;
};

// exp(x Log z) with Log the principal logarithm; 0 for z == 0.
complex principal_power(complex z, double x);

// exp(-i pi (1/2 + 2n/p)).
complex branch_phase(int p, int n);

// (beta / ((M+1/2) pi))^(1+2/p) * exp(-i pi (1/2 + 2n/p)).
AsymptoticEstimate estimate_first_order(const StarModel &model, int M, int n);

// (M+1/2) pi / [(1+2/p) + beta^(-1-2/p) ((M+1/2) pi)^(2+2/p) exp(i pi (1/2 + 2n/p))].
// Throws Diagnostic::resonant_denominator if the denominator is below 1e-12.
AsymptoticEstimate estimate_second_order(const StarModel &model, int M, int n);

// Fixed point eps <- arctan[(beta / ((M+1/2) pi + eps))^(1+2/p) exp(-i pi (1/2 + 2n/p))]
// from the first-order seed. Throws Diagnostic::iteration_nonconvergence.
AsymptoticEstimate refine_iteratively(const StarModel &model, int M, int n,
                                      int max_iters = 100, double tol = 1e-14);

struct OrderSample
{
  int window = 0;
  double relative_error = 0.0;
};

struct OrderFit
{
  std::vector<OrderSample> samples;  // samples that entered the fit
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::string> warnings;
};

// Relative errors at or below this floor are dropped from fits.
inline constexpr double kErrorFloor = 100.0 * 2.220446049250313e-16;

// Least squares through (log M, log relative_error). Non-positive errors and errors below
// kErrorFloor are excluded with a warning; throws Diagnostic::insufficient_samples when
// fewer than 5 distinct windows remain.
OrderFit fit_error_order(std::span<const OrderSample> samples);

// Relative error |estimate - eps| / |eps| against solve_branch for M in [m_min, m_max].
// Sample generation runs on `threads` workers; aggregation order is fixed.
std::vector<OrderSample> order_samples(const StarModel &model, int n, int m_min, int m_max,
                                       EstimateOrder order, int threads = 1);

struct OrderMeasurement
{
  int q = 0;
  complex beta;
  int branch = 0;
  EstimateOrder order = EstimateOrder::first;
  int m_min = 0;
  int m_max = 0;
  double claimed_exponent = 0.0;
  OrderFit fit;
};

OrderMeasurement measure_error_order(const StarModel &model, int n, int m_min, int m_max,
                                     EstimateOrder order, int threads = 1);

}  // namespace stargraph
