// SPDX-License-Identifier: Apache-2.0

#include "stargraph/symmetry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "stargraph/asymptotics.hpp"
#include "stargraph/error.hpp"
#include "stargraph/parallel.hpp"
#include "stargraph/rootfinder.hpp"
#include "stargraph/secular.hpp"

namespace stargraph
{

namespace
{

using std::numbers::pi;

void require_positive_p(const StarModel &model)
{
  if (model.p() < 1)
  {
    throw Error(Diagnostic::invalid_argument, "symmetry checks need p = q - 2 >= 1");
  }
}

complex sample_lambda(std::mt19937_64 &rng)
{
  std::uniform_real_distribution<double> re(0.0, 50.0);
  std::uniform_real_distribution<double> im(-5.0, 5.0);
  const double x = re(rng);
  return {x, im(rng)};
}

}  // namespace

std::string to_string(PermutationConclusion c)
{
  switch (c)
  {
    case PermutationConclusion::cyclic_shift_confirmed:
      return "cyclic_shift_confirmed";
    case PermutationConclusion::mismatch:
      return "mismatch";
    case PermutationConclusion::ambiguous:
      return "ambiguous";
  }
  return "unknown";
}

InvarianceReport verify_g_invariance(const StarModel &model, int sample_count,
                                     std::uint64_t seed)
{
  require_positive_p(model);
  const StarModel rotated = apply_time_reversal(model);
  std::mt19937_64 rng(seed);
  InvarianceReport report;
  for (int i = 0; i < sample_count; ++i)
  {
    const complex lambda = sample_lambda(rng);
    const complex g = eval_reduced(model, lambda);
    const complex g_rot = eval_reduced(rotated, lambda);
    const double deviation = std::abs(g_rot - g) / (1.0 + std::abs(g));
    report.max_relative_deviation = std::max(report.max_relative_deviation, deviation);
    if (!(deviation < 1e-12))
    {
      report.violations.push_back(lambda);
    }
    ++report.samples;
  }
  return report;
}

complex branch_rhs(const StarModel &model, complex lambda, int n)
{
  const int p = model.p();
  return principal_power(lambda / model.beta(), 1.0 + 2.0 / p) *
         std::polar(1.0, pi * (-0.5 + 2.0 * n / p));
}

BranchShiftReport verify_branch_equation_shift(const StarModel &model, int sample_count,
                                               std::uint64_t seed)
{
  require_positive_p(model);
  const StarModel rotated = apply_time_reversal(model);
  const int p = model.p();
  std::mt19937_64 rng(seed);
  BranchShiftReport report;
  for (int i = 0; i < sample_count; ++i)
  {
    const complex lambda = sample_lambda(rng);
    ++report.samples;
    // Rotating beta by -2 pi/q turns arg(lambda / beta) by +2 pi/q; crossing the principal
    // cut at pi changes the power by exp(2 pi i (1 + 2/p)) and the identity does not apply.
    if (std::arg(lambda / model.beta()) + 2.0 * pi / model.q() > pi)
    {
      ++report.on_branch_cut;
      continue;
    }
    bool ok = true;
    for (int n = 0; n < p; ++n)
    {
      const complex lhs = branch_rhs(rotated, lambda, n);
      const complex rhs = branch_rhs(model, lambda, (n + 1) % p);
      const double deviation = std::abs(lhs - rhs) / std::abs(rhs);
      report.max_relative_deviation = std::max(report.max_relative_deviation, deviation);
      ok = ok && deviation < 1e-12;
    }
    ++report.compared;
    if (!ok)
    {
      report.violations.push_back(lambda);
    }
  }
  return report;
}

PermutationReport match_rotated_roots(const StarModel &model, int m_min, int m_max,
                                      double tol, int threads)
{
  require_positive_p(model);
  if (m_min < 0 || m_max < m_min)
  {
    throw Error(Diagnostic::invalid_argument, "invalid window range for root matching");
  }
  const StarModel rotated = apply_time_reversal(model);
  const int p = model.p();
  const std::size_t windows = static_cast<std::size_t>(m_max - m_min + 1);

  std::vector<std::vector<BranchPairing>> per_window(windows);
  parallel_for(windows, threads, [&](std::size_t w) {
    const int M = m_min + static_cast<int>(w);
    std::vector<complex> original(static_cast<std::size_t>(p));
    for (int n = 0; n < p; ++n)
    {
      original[static_cast<std::size_t>(n)] = solve_branch(model, M, n).epsilon;
    }
    for (int n = 0; n < p; ++n)
    {
      const complex eps = solve_branch(rotated, M, n).epsilon;
      double best = std::numeric_limits<double>::infinity();
      double second = std::numeric_limits<double>::infinity();
      int best_n = 0;
      for (int m = 0; m < p; ++m)
      {
        const double d = std::abs(eps - original[static_cast<std::size_t>(m)]);
        if (d < best)
        {
          second = best;
          best = d;
          best_n = m;
        }
        else if (d < second)
        {
          second = d;
        }
      }
      per_window[w].push_back({M, n, best_n, best, second < 2.0 * best});
    }
  });

  PermutationReport report;
  report.q = model.q();
  report.m_min = m_min;
  report.m_max = m_max;
  report.tolerance = tol;
  bool ambiguous = false;
  bool shifted = true;
  for (auto &pairs : per_window)
  {
    for (auto &pair : pairs)
    {
      report.max_distance = std::max(report.max_distance, pair.distance);
      ambiguous = ambiguous || pair.ambiguous;
      shifted = shifted && pair.n_matched == (pair.n_source + 1) % p;
      report.pairs.push_back(pair);
    }
  }
  if (ambiguous)
  {
    report.conclusion = PermutationConclusion::ambiguous;
  }
  else if (shifted && report.max_distance < tol)
  {
    report.conclusion = PermutationConclusion::cyclic_shift_confirmed;
  }
  else
  {
    report.conclusion = PermutationConclusion::mismatch;
  }
  return report;
}

}  // namespace stargraph
