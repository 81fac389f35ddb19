// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "stargraph/model.hpp"

namespace stargraph
{

// Checks of the generalized PT symmetry: the coupling rotation alpha -> alpha e^{-2 pi i/q}
// leaves the spectrum invariant and advances the branch label n -> n + 1 (mod p).

struct InvarianceReport
{
  int samples = 0;
  double max_relative_deviation = 0.0;
  std::vector<complex> violations;
  bool passed() const { return violations.empty(); }
};

// |G(lambda; T beta) - G(lambda; beta)| < 1e-12 (1 + |G(lambda; beta)|) on seeded random
// lambda in [0, 50] x [-5, 5].
InvarianceReport verify_g_invariance(const StarModel &model, int sample_count,
                                     std::uint64_t seed);

// Right-hand side of branch equation n: (lambda / beta)^(1+2/p) exp(i pi (-1/2 + 2n/p)).
complex branch_rhs(const StarModel &model, complex lambda, int n);

struct BranchShiftReport
{
  int samples = 0;
  int compared = 0;
  int on_branch_cut = 0;  // reported separately, not failed
  double max_relative_deviation = 0.0;
  std::vector<complex> violations;
  bool passed() const { return violations.empty(); }
};

// RHS_n(lambda; T beta) == RHS_{n+1 mod p}(lambda; beta) to 1e-12 relative for every n,
// except for samples where arg(lambda / beta) + 2 pi / q leaves (-pi, pi].
BranchShiftReport verify_branch_equation_shift(const StarModel &model, int sample_count,
                                               std::uint64_t seed);

enum class PermutationConclusion
{
  cyclic_shift_confirmed,
  mismatch,
  ambiguous,
};

std::string to_string(PermutationConclusion c);

struct BranchPairing
{
  int window = 0;
  int n_source = 0;   // branch of the root for the rotated coupling
  int n_matched = 0;  // branch of the nearest root for the original coupling
  double distance = 0.0;
  bool ambiguous = false;
};

struct PermutationReport
{
  int q = 0;
  int m_min = 0;
  int m_max = 0;
  double tolerance = 0.0;
  std::vector<BranchPairing> pairs;
  double max_distance = 0.0;
  PermutationConclusion conclusion = PermutationConclusion::mismatch;
};

PermutationReport match_rotated_roots(const StarModel &model, int m_min, int m_max,
                                      double tol = 1e-9, int threads = 1);

}  // namespace stargraph
