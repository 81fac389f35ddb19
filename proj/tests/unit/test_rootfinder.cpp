// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "stargraph/error.hpp"
#include "stargraph/rootfinder.hpp"
#include "stargraph/secular.hpp"

namespace stargraph
{
namespace
{

using std::numbers::pi;
using testing::relative_difference;

Diagnostic diagnostic_of(auto &&fn)
{
  try
  {
    fn();
  }
  catch (const Error &e)
  {
    return e.diagnostic();
  }
  ADD_FAILURE() << "expected an error";
  return Diagnostic::schema_error;
}

TEST(RealRoots, HalfIntegerMultiplesOfPi)
{
  const auto roots = real_roots(make_model(3, 1.0, 1.0), 20);
  ASSERT_EQ(roots.size(), 20u);
  EXPECT_DOUBLE_EQ(roots[0].kappa.real(), pi / 2);
  EXPECT_DOUBLE_EQ(roots[1].kappa.real(), pi);
  for (std::size_t i = 0; i + 1 < roots.size(); ++i)
  {
    EXPECT_NEAR((roots[i + 1].kappa - roots[i].kappa).real(), pi / 2, 1e-14);
    EXPECT_EQ(roots[i].kappa.imag(), 0.0);
  }
}

TEST(RealRoots, IndependentOfCoupling)
{
  const auto a = real_roots(make_model(4, 1.0, 0.5), 20);
  const auto b = real_roots(make_model(4, 1.0, 7.0), 20);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    EXPECT_EQ(a[i].kappa, b[i].kappa);
  }
  EXPECT_THROW(real_roots(make_model(3, 1.0, 1.0), 0), Error);
}

TEST(Winding, WindowCounts)
{
  const StarModel m = make_model(3, 1.0, 1.0);
  EXPECT_EQ(winding_count(m, ContourRegion::disc(21 * pi / 2, pi / 4)), 1);
  EXPECT_EQ(winding_count(m, ContourRegion::disc(pi, 0.1)), 0);
  EXPECT_EQ(winding_count(make_model(8, 1.0, 1.0), ContourRegion::window(12)), 6);
}

TEST(Winding, AdditiveUnderSplitting)
{
  const StarModel m = make_model(4, 1.0, complex(1.0, 0.5));
  const Rectangle whole{0.3, 30.0, -4.0, 4.0};
  const int total = winding_count(m, ContourRegion::rectangle(whole.re_min, whole.re_max,
                                                              whole.im_min, whole.im_max));
  for (double cut : {7.1, 13.37, 22.9})
  {
    const int left = winding_count(m, ContourRegion::rectangle(whole.re_min, cut, -4.0, 4.0));
    const int right = winding_count(m, ContourRegion::rectangle(cut, whole.re_max, -4.0, 4.0));
    EXPECT_EQ(left + right, total) << "cut at " << cut;
  }
  for (double cut : {-1.3, 0.21, 2.5})
  {
    const int low = winding_count(m, ContourRegion::rectangle(0.3, 30.0, -4.0, cut));
    const int high = winding_count(m, ContourRegion::rectangle(0.3, 30.0, cut, 4.0));
    EXPECT_EQ(low + high, total) << "cut at " << cut;
  }
}

TEST(Winding, BoundaryThroughRootIsReported)
{
  const StarModel m = make_model(3, 1.0, 1.0);
  const ComplexRoot r = solve_branch(m, 4, 0);
  EXPECT_EQ(diagnostic_of([&] {
              winding_count(m, ContourRegion::rectangle(r.kappa.real(), r.kappa.real() + 1.0,
                                                        -1.0, 1.0));
            }),
            Diagnostic::boundary_too_close);
}

TEST(RegionSearch, PerturbsRegionWhoseEdgeHitsARoot)
{
  const StarModel m = make_model(3, 1.0, 1.0);
  const ComplexRoot r = solve_branch(m, 4, 0);
  const RegionSearch s = find_roots_in_region(
      m, ContourRegion::rectangle(r.kappa.real(), r.kappa.real() + 2.0, -1.0, 1.0));
  EXPECT_TRUE(s.complete());
  EXPECT_FALSE(s.diagnostics.empty());
}

TEST(RegionSearch, RectangleMatchesGridScanOracle)
{
  const StarModel m = make_model(3, 1.0, 1.0);
  const Rectangle box{0.1, 35.0, -5.0, 5.0};
  const RegionSearch s =
      find_roots_in_region(m, ContourRegion::rectangle(box.re_min, box.re_max, box.im_min,
                                                       box.im_max));
  ASSERT_TRUE(s.complete());
  EXPECT_EQ(static_cast<int>(s.roots.size()), s.winding);

  bool found_window_10 = false;
  for (const auto &r : s.roots)
  {
    if (r.window == 10)
    {
      found_window_10 = true;
      EXPECT_NEAR(r.epsilon.imag(), -2.786e-5, 1e-8);
      EXPECT_LT(std::abs(r.epsilon.real()), 1e-9);
    }
  }
  EXPECT_TRUE(found_window_10);

  const auto scan = testing::grid_scan_roots(m, box, 1400);
  ASSERT_EQ(scan.size(), s.roots.size());
  for (complex z : scan)
  {
    double best = 1.0;
    for (const auto &r : s.roots)
    {
      best = std::min(best, std::abs(r.kappa - z));
    }
    EXPECT_LT(best, 1e-9) << z;
  }
}

TEST(RegionSearch, WindowOfFourEdges)
{
  const StarModel m = make_model(4, 1.0, 1.0);
  const RegionSearch s = find_roots_in_region(m, ContourRegion::disc(21 * pi / 2, pi / 4));
  ASSERT_EQ(s.roots.size(), 2u);
  EXPECT_NEAR(s.roots[0].epsilon.imag(), -9.19e-4, 1e-6);
  EXPECT_NEAR(s.roots[1].epsilon.imag(), 9.19e-4, 1e-6);
}

TEST(RegionSearch, ReportedRootsAreWellFormed)
{
  for (int q : {3, 4, 5, 8})
  {
    const StarModel m = make_model(q, 1.0, complex(1.0, 0.2));
    const RegionSearch s = find_roots_in_region(m, ContourRegion::rectangle(2.0, 40.0, -6.0, 6.0));
    ASSERT_TRUE(s.complete()) << "q = " << q;
    for (std::size_t i = 0; i < s.roots.size(); ++i)
    {
      const ComplexRoot &r = s.roots[i];
      EXPECT_LT(r.residual_g, 1e-10);
      EXPECT_LT(r.residual_oracle, 1e-8);
      if (r.window)
      {
        EXPECT_LT(std::abs(r.epsilon), pi / 4);
        EXPECT_LT(std::abs(window_center(*r.window) + r.epsilon - r.kappa), 1e-14 * std::abs(r.kappa));
      }
      // Parity partner is a root as well.
      const ReducedEval partner = eval_reduced_full(m, -r.kappa);
      EXPECT_LT(std::abs(partner.value) / partner.scale, 1e-10);
      for (std::size_t j = i + 1; j < s.roots.size(); ++j)
      {
        EXPECT_GT(std::abs(s.roots[j].kappa - r.kappa), 1e-8);
      }
    }
  }
}

TEST(RegionSearch, IndependentOfTraversalOrder)
{
  const StarModel m = make_model(5, 1.0, complex(1.5, -0.4));
  const auto region = ContourRegion::rectangle(0.5, 30.0, -5.0, 5.0);
  const RegionSearch base = find_roots_in_region(m, region);
  ASSERT_TRUE(base.complete());
  for (std::uint64_t seed : {1u, 7u, 12345u})
  {
    SearchOptions opts;
    opts.traversal_seed = seed;
    const RegionSearch shuffled = find_roots_in_region(m, region, opts);
    ASSERT_EQ(shuffled.roots.size(), base.roots.size());
    for (std::size_t i = 0; i < base.roots.size(); ++i)
    {
      EXPECT_LT(std::abs(shuffled.roots[i].kappa - base.roots[i].kappa), 1e-9);
    }
  }
}

TEST(RegionSearch, ContourLabelsMatchBranchSolves)
{
  for (int q : {3, 4, 5, 8})
  {
    const StarModel m = make_model(q, 1.0, 1.0);
    for (int M : {3, 17, 30})
    {
      const RegionSearch s = find_roots_in_region(m, ContourRegion::window(M));
      ASSERT_EQ(static_cast<int>(s.roots.size()), m.p()) << "q = " << q << " M = " << M;
      for (const auto &r : s.roots)
      {
        ASSERT_TRUE(r.branch.has_value());
        const ComplexRoot b = solve_branch(m, M, *r.branch);
        EXPECT_LT(std::abs(b.kappa - r.kappa), 1e-9) << "q = " << q << " M = " << M;
        EXPECT_FALSE(r.ambiguous_branch);
      }
    }
  }
}

TEST(BranchSolve, FrozenReferenceRoots)
{
  struct Case
  {
    int q;
    double beta;
    int M, n;
    complex eps;
  };
  // High-precision reference values.
  const Case cases[] = {
      {3, 1.0, 10, 0, {7.0590629179408797438e-11, -2.7860088060640348037e-5}},
      {4, 1.0, 10, 0, {5.1207623472705204948e-8, -9.1901325729364259261e-4}},
      {4, 1.0, 10, 1, {5.1207623472705204948e-8, 9.1901325729364259261e-4}},
      {8, 1.0, 20, 3, {3.1067076723389332318e-7, 3.8737404812336180013e-3}},
      {3, 1.0, 5, 0, {6.5242912412926592679e-9, -1.9384844343371591627e-4}},
      {5, 2.0, 3, 0, {5.1901341985623476216e-4, -0.058450213067528410023}},
      {5, 2.0, 3, 1, {-0.050828407028343082482, 0.029583592245722076616}},
      {5, 2.0, 3, 2, {0.05030941493374896124, 0.028692226878793775923}},
  };
  for (const Case &c : cases)
  {
    const ComplexRoot r = solve_branch(make_model(c.q, 1.0, c.beta), c.M, c.n);
    EXPECT_LT(relative_difference(r.epsilon, c.eps), 1e-10)
        << "q = " << c.q << " M = " << c.M << " n = " << c.n << " got " << r.epsilon;
    EXPECT_EQ(r.window, c.M);
    EXPECT_EQ(r.branch, c.n);
    EXPECT_EQ(r.method, RootMethod::branch);
    EXPECT_LT(r.residual_g, 1e-10);
    EXPECT_LT(r.residual_oracle, 1e-8);
  }
}

TEST(BranchSolve, RejectsInvalidBranch)
{
  const StarModel m = make_model(4, 1.0, 1.0);
  EXPECT_EQ(diagnostic_of([&] { solve_branch(m, 5, 2); }), Diagnostic::invalid_argument);
  EXPECT_EQ(diagnostic_of([&] { solve_branch(m, 5, -1); }), Diagnostic::invalid_argument);
  EXPECT_THROW(solve_branch(make_model(2, 1.0, 1.0), 5, 0), Error);
}

TEST(BranchSolve, DistinctRootsPerWindow)
{
  for (int q : {3, 4, 5, 8})
  {
    const StarModel m = make_model(q, 1.0, 1.0);
    std::vector<complex> roots;
    for (int n = 0; n < m.p(); ++n)
    {
      roots.push_back(solve_branch(m, 3, n).kappa);
    }
    for (std::size_t i = 0; i < roots.size(); ++i)
    {
      for (std::size_t j = i + 1; j < roots.size(); ++j)
      {
        EXPECT_GT(std::abs(roots[i] - roots[j]), 1e-3) << "q = " << q;
      }
    }
  }
}

TEST(SpecialCase, TwoEdgesRootEqualsBeta)
{
  for (double beta : {0.3, 0.7, 1.3})
  {
    const ComplexRoot r = special_p0_root(make_model(2, 1.0, beta));
    EXPECT_EQ(r.kappa, complex(beta, 0.0));
    EXPECT_LT(r.residual_oracle, 1e-10);
    EXPECT_EQ(r.method, RootMethod::special_p0);
  }
  EXPECT_THROW(special_p0_root(make_model(3, 1.0, 1.0)), Error);
  EXPECT_EQ(diagnostic_of([] { special_p0_root(make_model(2, 1.0, pi / 2)); }),
            Diagnostic::degenerate_coincidence);
}

TEST(SortAndDeduplicate, OrdersAndMerges)
{
  std::vector<ComplexRoot> roots(4);
  roots[0].kappa = {3.0, 1.0};
  roots[1].kappa = {1.0, 0.5};
  roots[2].kappa = {1.0, -0.5};
  roots[3].kappa = {3.0, 1.0 + 1e-10};
  sort_and_deduplicate(roots);
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_EQ(roots[0].kappa, complex(1.0, -0.5));
  EXPECT_EQ(roots[1].kappa, complex(1.0, 0.5));
}

TEST(RootMethod, NamesRoundTrip)
{
  for (RootMethod m : {RootMethod::contour, RootMethod::branch, RootMethod::special_p0})
  {
    EXPECT_EQ(parse_root_method(to_string(m)), m);
  }
  EXPECT_FALSE(parse_root_method("bisection").has_value());
}

}  // namespace
}  // namespace stargraph
