// SPDX-License-Identifier: Apache-2.0

#include "stargraph/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "stargraph/error.hpp"
#include "stargraph/parallel.hpp"
#include "stargraph/rootfinder.hpp"
#include "stargraph/secular.hpp"

namespace stargraph
{

namespace
{

using std::numbers::pi;

void check_branch_args(const StarModel &model, int M, int n)
{
  if (model.p() < 1)
  {
    throw Error(Diagnostic::invalid_argument, "asymptotic formulas need p = q - 2 >= 1");
  }
  if (n < 0 || n >= model.p())
  {
    throw Error(Diagnostic::invalid_argument,
                "branch index n = " + std::to_string(n) + " outside [0, p-1]");
  }
  if (M < 0)
  {
    throw Error(Diagnostic::invalid_argument, "window index M must be >= 0");
  }
}

double exponent_of(const StarModel &model)
{
  return 1.0 + 2.0 / model.p();
}

}  // namespace

std::string to_string(EstimateOrder o)
{
  switch (o)
  {
    case EstimateOrder::first:
      return "first";
    case EstimateOrder::second:
      return "second";
    case EstimateOrder::iterated:
      return "iterated";
  }
  return "unknown";
}

complex principal_power(complex z, double x)
{
  if (z == complex(0.0, 0.0))
  {
    return {0.0, 0.0};
  }
  return std::exp(x * std::log(z));
}

complex branch_phase(int p, int n)
{
  return std::polar(1.0, -pi * (0.5 + 2.0 * n / p));
}

AsymptoticEstimate estimate_first_order(const StarModel &model, int M, int n)
{
  check_branch_args(model, M, n);
  const double a = exponent_of(model);
  AsymptoticEstimate est;
  est.window = M;
  est.branch = n;
  est.order = EstimateOrder::first;
  est.epsilon =
      principal_power(model.beta(), a) * std::pow(window_center(M), -a) * branch_phase(model.p(), n);
  est.claimed_rel_error_exponent = -a;
  return est;
}

AsymptoticEstimate estimate_second_order(const StarModel &model, int M, int n)
{
  check_branch_args(model, M, n);
  const double a = exponent_of(model);
  const double center = window_center(M);
  const complex denominator = a + principal_power(model.beta(), -a) *
                                      std::pow(center, 1.0 + a) /
                                      branch_phase(model.p(), n);
  if (std::abs(denominator) < 1e-12)
  {
    throw Error(Diagnostic::resonant_denominator,
                "resonant denominator in second-order estimate at M = " + std::to_string(M) +
                    ", n = " + std::to_string(n));
  }
  AsymptoticEstimate est;
  est.window = M;
  est.branch = n;
  est.order = EstimateOrder::second;
  est.epsilon = center / denominator;
  est.claimed_rel_error_exponent = -(3.0 + 4.0 / model.p());
  return est;
}

AsymptoticEstimate refine_iteratively(const StarModel &model, int M, int n, int max_iters,
                                      double tol)
{
  AsymptoticEstimate est = estimate_first_order(model, M, n);
  const double a = exponent_of(model);
  const double center = window_center(M);
  const complex coupling = principal_power(model.beta(), a) * branch_phase(model.p(), n);

  complex previous = est.epsilon;
  for (int k = 1; k <= max_iters; ++k)
  {
    const complex next =
        std::atan(coupling * principal_power(center + previous, -a));
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag()))
    {
      break;
    }
    if (std::abs(next - previous) < tol)
    {
      est.order = EstimateOrder::iterated;
      est.iterations = k;
      est.epsilon = next;
      est.claimed_rel_error_exponent.reset();
      return est;
    }
    if (k == max_iters)
    {
      std::ostringstream msg;
      msg.precision(17);
      msg << "fixed-point refinement did not converge in " << max_iters
          << " iterations; last iterates " << previous << " and " << next;
      throw Error(Diagnostic::iteration_nonconvergence, msg.str());
    }
    previous = next;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "fixed-point refinement produced a non-finite iterate after " << previous;
  throw Error(Diagnostic::iteration_nonconvergence, msg.str());
}

OrderFit fit_error_order(std::span<const OrderSample> samples)
{
  OrderFit fit;
  std::set<int> windows;
  for (const auto &s : samples)
  {
    if (!(s.relative_error > 0.0) || !std::isfinite(s.relative_error))
    {
      fit.warnings.push_back("excluded M = " + std::to_string(s.window) +
                             ": non-positive relative error");
      continue;
    }
    if (s.relative_error <= kErrorFloor)
    {
      fit.warnings.push_back("excluded M = " + std::to_string(s.window) +
                             ": relative error at floating-point noise floor");
      continue;
    }
    if (s.window <= 0)
    {
      fit.warnings.push_back("excluded M = " + std::to_string(s.window) +
                             ": log M undefined");
      continue;
    }
    fit.samples.push_back(s);
    windows.insert(s.window);
  }
  if (windows.size() < 5)
  {
    throw Error(Diagnostic::insufficient_samples,
                "order fit needs at least 5 usable samples with distinct M, got " +
                    std::to_string(windows.size()));
  }

  const double count = static_cast<double>(fit.samples.size());
  double sx = 0.0, sy = 0.0;
  for (const auto &s : fit.samples)
  {
    sx += std::log(static_cast<double>(s.window));
    sy += std::log(s.relative_error);
  }
  const double mx = sx / count;
  const double my = sy / count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto &s : fit.samples)
  {
    const double dx = std::log(static_cast<double>(s.window)) - mx;
    const double dy = std::log(s.relative_error) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return fit;
}

std::vector<OrderSample> order_samples(const StarModel &model, int n, int m_min, int m_max,
                                       EstimateOrder order, int threads)
{
  if (m_max < m_min)
  {
    throw Error(Diagnostic::invalid_argument, "empty window range");
  }
  std::vector<OrderSample> samples(static_cast<std::size_t>(m_max - m_min + 1));
  parallel_for(samples.size(), threads, [&](std::size_t i) {
    const int M = m_min + static_cast<int>(i);
    const ComplexRoot root = solve_branch(model, M, n);
    complex estimate;
    switch (order)
    {
      case EstimateOrder::first:
        estimate = estimate_first_order(model, M, n).epsilon;
        break;
      case EstimateOrder::second:
        estimate = estimate_second_order(model, M, n).epsilon;
        break;
      case EstimateOrder::iterated:
        estimate = refine_iteratively(model, M, n).epsilon;
        break;
    }
    samples[i] = {M, std::abs(estimate - root.epsilon) / std::abs(root.epsilon)};
  });
  return samples;
}

OrderMeasurement measure_error_order(const StarModel &model, int n, int m_min, int m_max,
                                     EstimateOrder order, int threads)
{
  if (order == EstimateOrder::iterated)
  {
    throw Error(Diagnostic::invalid_argument, "iterated refinement has no claimed exponent");
  }
  OrderMeasurement out;
  out.q = model.q();
  out.beta = model.beta();
  out.branch = n;
  out.order = order;
  out.m_min = m_min;
  out.m_max = m_max;
  out.claimed_exponent = order == EstimateOrder::first ? -(1.0 + 2.0 / model.p())
                                                       : -(3.0 + 4.0 / model.p());
  const auto samples = order_samples(model, n, m_min, m_max, order, threads);
  out.fit = fit_error_order(samples);
  return out;
}

}  // namespace stargraph
