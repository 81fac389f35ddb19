// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <map>
#include <numbers>

#include "oracles.hpp"
#include "stargraph/rootfinder.hpp"
#include "stargraph/secular.hpp"
#include "stargraph/symmetry.hpp"

namespace stargraph
{
namespace
{

using std::numbers::pi;
using testing::relative_difference;

TEST(Invariance, ReducedFunctionUnderCouplingRotation)
{
  const InvarianceReport real = verify_g_invariance(make_model(3, 1.0, 1.0), 1000, 42);
  EXPECT_TRUE(real.passed());
  EXPECT_EQ(real.samples, 1000);
  EXPECT_LT(real.max_relative_deviation, 1e-12);

  const InvarianceReport cplx = verify_g_invariance(make_model(4, 1.0, complex(2.0, 1.0)), 1000, 43);
  EXPECT_TRUE(cplx.passed());
  EXPECT_LT(cplx.max_relative_deviation, 1e-12);
}

TEST(Invariance, FullTurnRestoresCoupling)
{
  for (int q : {3, 4, 5})
  {
    const StarModel m = make_model(q, 1.0, complex(2.0, 1.0));
    StarModel t = m;
    for (int k = 0; k < q; ++k)
    {
      t = apply_time_reversal(t);
    }
    EXPECT_LT(std::abs(t.beta() - m.beta()), 1e-12 * std::abs(m.beta()));
    EXPECT_LT(verify_g_invariance(t, 200, 5).max_relative_deviation, 1e-12);
  }
}

TEST(BranchEquation, RotationAdvancesBranchIndex)
{
  const StarModel m = make_model(4, 1.0, 1.0);
  const StarModel t = apply_time_reversal(m);
  const complex lambda(3.0, 0.1);
  EXPECT_LT(relative_difference(branch_rhs(t, lambda, 0), branch_rhs(m, lambda, 1)), 1e-13);
  EXPECT_LT(relative_difference(branch_rhs(t, lambda, 1), branch_rhs(m, lambda, 0)), 1e-13);
}

TEST(BranchEquation, SingleBranchIsInvariant)
{
  const StarModel m = make_model(3, 1.0, 1.0);
  const StarModel t = apply_time_reversal(m);
  for (complex lambda : {complex(3.0, 0.1), complex(12.0, -0.4), complex(40.0, 0.0)})
  {
    EXPECT_LT(relative_difference(branch_rhs(t, lambda, 0), branch_rhs(m, lambda, 0)), 1e-13);
  }
}

TEST(BranchEquation, FullTurnReturnsSameRightHandSide)
{
  for (int q : {3, 4, 5, 8})
  {
    const StarModel m = make_model(q, 1.0, 1.0);
    StarModel t = m;
    for (int k = 0; k < q; ++k)
    {
      t = apply_time_reversal(t);
    }
    for (int n = 0; n < m.p(); ++n)
    {
      const complex lambda(9.0, 0.3);
      EXPECT_LT(relative_difference(branch_rhs(t, lambda, n), branch_rhs(m, lambda, n)), 1e-13);
    }
  }
}

TEST(BranchEquation, ShiftVerifiedOnSamples)
{
  for (int q : {3, 4, 5, 8})
  {
    for (complex beta : {complex(1.0, 0.0), complex(2.0, 1.0)})
    {
      const BranchShiftReport r = verify_branch_equation_shift(make_model(q, 1.0, beta), 1000, 9);
      EXPECT_TRUE(r.passed()) << "q = " << q;
      EXPECT_EQ(r.compared + r.on_branch_cut, r.samples);
      EXPECT_GT(r.compared, 900);
    }
  }
}

TEST(RotatedRoots, CyclicShiftConfirmed)
{
  for (int q : {3, 4, 5, 8})
  {
    for (double beta : {0.5, 1.0, 3.0})
    {
      const PermutationReport r = match_rotated_roots(make_model(q, 1.0, beta), 3, 20);
      EXPECT_EQ(r.conclusion, PermutationConclusion::cyclic_shift_confirmed)
          << "q = " << q << " beta = " << beta;
      EXPECT_LT(r.max_distance, 1e-9);
      EXPECT_EQ(r.pairs.size(), static_cast<std::size_t>(18 * (q - 2)));
    }
  }
}

TEST(RotatedRoots, FourEdgesSwapBranches)
{
  const PermutationReport r = match_rotated_roots(make_model(4, 1.0, 1.0), 3, 20);
  for (const auto &pair : r.pairs)
  {
    EXPECT_EQ(pair.n_matched, 1 - pair.n_source);
  }
}

TEST(RotatedRoots, QFoldCompositionIsIdentity)
{
  for (int q : {3, 4, 5, 8})
  {
    const double tol = 1e-9;
    std::vector<StarModel> models{make_model(q, 1.0, 1.0)};
    for (int k = 0; k < q; ++k)
    {
      models.push_back(apply_time_reversal(models.back()));
    }
    const int p = q - 2;
    for (int M : {3, 9, 20})
    {
      // label[n]: branch label in models[k] of the root labelled n in models[q].
      std::vector<int> label(static_cast<std::size_t>(p));
      for (int n = 0; n < p; ++n)
      {
        label[static_cast<std::size_t>(n)] = n;
      }
      for (int k = q - 1; k >= 0; --k)
      {
        const PermutationReport r = match_rotated_roots(models[static_cast<std::size_t>(k)], M, M, tol);
        std::map<int, int> step;
        for (const auto &pair : r.pairs)
        {
          EXPECT_LT(pair.distance, tol);
          step[pair.n_source] = pair.n_matched;
        }
        for (auto &l : label)
        {
          l = step.at(l);
        }
      }
      for (int n = 0; n < p; ++n)
      {
        EXPECT_EQ(label[static_cast<std::size_t>(n)], n) << "q = " << q << " M = " << M;
        const complex a = solve_branch(models.back(), M, n).kappa;
        const complex b = solve_branch(models.front(), M, n).kappa;
        EXPECT_LT(std::abs(a - b), q * tol);
      }
    }
  }
}

TEST(RotatedRoots, SpectrumSetInvariantInARegion)
{
  for (int q : {3, 4, 5})
  {
    const StarModel m = make_model(q, 1.0, complex(1.0, 0.3));
    const StarModel t = apply_time_reversal(m);
    const auto region = ContourRegion::rectangle(1.0, 25.0, -4.0, 4.0);
    const RegionSearch a = find_roots_in_region(m, region);
    const RegionSearch b = find_roots_in_region(t, region);
    ASSERT_TRUE(a.complete() && b.complete());
    ASSERT_EQ(a.roots.size(), b.roots.size());
    for (std::size_t i = 0; i < a.roots.size(); ++i)
    {
      EXPECT_LT(std::abs(a.roots[i].kappa - b.roots[i].kappa), 1e-9);
    }
  }
}

TEST(EdgeRelabeling, RootsCertifiedUnderEveryCyclicLabelling)
{
  for (int q : {3, 4, 5})
  {
    const StarModel m = make_model(q, 1.0, 1.0);
    const EdgePermutation parity = parity_permutation(q);
    const RegionSearch s = find_roots_in_region(m, ContourRegion::window(7));
    for (const auto &r : s.roots)
    {
      for (int k = 0; k < parity.order(); ++k)
      {
        EXPECT_LT(oracle_residual(m, r.kappa, parity.power(k)(0)), 1e-8);
      }
    }
  }
}

TEST(Conclusion, Names)
{
  EXPECT_EQ(to_string(PermutationConclusion::cyclic_shift_confirmed), "cyclic_shift_confirmed");
  EXPECT_EQ(to_string(PermutationConclusion::mismatch), "mismatch");
  EXPECT_EQ(to_string(PermutationConclusion::ambiguous), "ambiguous");
}

}  // namespace
}  // namespace stargraph
