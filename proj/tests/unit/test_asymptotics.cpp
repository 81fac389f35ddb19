// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "stargraph/asymptotics.hpp"
#include "stargraph/error.hpp"
#include "stargraph/rootfinder.hpp"
#include "stargraph/secular.hpp"

namespace stargraph
{
namespace
{

using std::numbers::pi;
using testing::relative_difference;

TEST(FirstOrder, ReferenceValues)
{
  const StarModel q3 = make_model(3, 1.0, 1.0);
  const AsymptoticEstimate e = estimate_first_order(q3, 10, 0);
  EXPECT_LT(relative_difference(e.epsilon, complex(0.0, -2.7860088053730257367e-5)), 1e-13);
  EXPECT_EQ(e.order, EstimateOrder::first);
  EXPECT_DOUBLE_EQ(*e.claimed_rel_error_exponent, -3.0);

  const StarModel q4 = make_model(4, 1.0, 1.0);
  const complex n0 = estimate_first_order(q4, 10, 0).epsilon;
  const complex n1 = estimate_first_order(q4, 10, 1).epsilon;
  EXPECT_LT(relative_difference(n0, complex(0.0, -9.1901300355861924212e-4)), 1e-13);
  EXPECT_LT(relative_difference(n1, complex(0.0, 9.1901300355861924212e-4)), 1e-13);
  EXPECT_DOUBLE_EQ(*estimate_first_order(q4, 10, 0).claimed_rel_error_exponent, -2.0);
}

TEST(FirstOrder, EstimatesLieOnACircle)
{
  for (int q : {3, 4, 5, 8})
  {
    const StarModel m = make_model(q, 1.0, complex(1.3, 0.4));
    const int p = m.p();
    for (int M : {3, 10, 50})
    {
      const double radius =
          std::pow(std::abs(m.beta()) / ((M + 0.5) * pi), 1.0 + 2.0 / p);
      const complex first = estimate_first_order(m, M, 0).epsilon;
      for (int n = 0; n < p; ++n)
      {
        const complex e = estimate_first_order(m, M, n).epsilon;
        EXPECT_NEAR(std::abs(e), radius, 1e-14 * radius);
        // Consecutive branches differ by the phase exp(-2 pi i / p).
        const complex expected = first * std::polar(1.0, -2.0 * pi * n / p);
        EXPECT_LT(std::abs(e - expected), 1e-13 * radius) << "q = " << q << " n = " << n;
      }
    }
  }
}

TEST(FirstOrder, WindowCentersAreOddRealRoots)
{
  const auto real = real_roots(make_model(3, 1.0, 1.0), 61);
  for (int M = 0; M <= 30; ++M)
  {
    EXPECT_EQ(window_center(M), real[static_cast<std::size_t>(2 * M)].kappa.real());
  }
}

TEST(FirstOrder, RootModulusWithinFactorTwo)
{
  for (int q : {3, 4, 5, 8})
  {
    const StarModel m = make_model(q, 1.0, 1.0);
    for (int M : {5, 10, 40})
    {
      for (int n = 0; n < m.p(); ++n)
      {
        const double predicted = std::abs(estimate_first_order(m, M, n).epsilon);
        const double actual = std::abs(solve_branch(m, M, n).epsilon);
        EXPECT_GT(actual, 0.5 * predicted);
        EXPECT_LT(actual, 2.0 * predicted);
      }
    }
  }
}

TEST(SecondOrder, ReferenceValues)
{
  const StarModel q3 = make_model(3, 1.0, 1.0);
  const AsymptoticEstimate e = estimate_second_order(q3, 10, 0);
  const complex frozen(7.0590629107427878499e-11, -2.7860088053551398029e-5);
  EXPECT_LT(relative_difference(e.epsilon, frozen), 1e-12);
  EXPECT_LT(relative_difference(e.epsilon, solve_branch(q3, 10, 0).epsilon), 1e-6);
  EXPECT_DOUBLE_EQ(*e.claimed_rel_error_exponent, -7.0);

  const StarModel q8 = make_model(8, 1.0, 1.0);
  const complex e8 = estimate_second_order(q8, 20, 3).epsilon;
  const complex frozen8(3.1066455817041522024e-7, 3.8737211268753652487e-3);
  EXPECT_LT(relative_difference(e8, frozen8), 1e-12);
  EXPECT_LT(relative_difference(e8, solve_branch(q8, 20, 3).epsilon), 1e-4);
}

TEST(SecondOrder, ReducesToFirstOrderForLargeWindows)
{
  const StarModel m = make_model(5, 1.0, 1.0);
  double previous = 1.0;
  for (int M : {5, 20, 80, 320})
  {
    const complex e1 = estimate_first_order(m, M, 1).epsilon;
    const complex e2 = estimate_second_order(m, M, 1).epsilon;
    const double gap = std::abs(e2 - e1) / std::abs(e1);
    EXPECT_LT(gap, previous);
    previous = gap;
  }
  EXPECT_LT(previous, 1e-3);
}

TEST(SecondOrder, ResonantDenominatorIsReported)
{
  // q = 3, M = 0: pick beta so that 3 + beta^-3 (pi/2)^4 i vanishes.
  const double lambda = pi / 2;
  const complex beta = std::pow(std::pow(lambda, 4) / 3.0, 1.0 / 3.0) * std::polar(1.0, -pi / 6);
  try
  {
    estimate_second_order(make_model(3, 1.0, beta), 0, 0);
    FAIL() << "expected a resonant denominator";
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.diagnostic(), Diagnostic::resonant_denominator);
  }
}

TEST(SecondOrder, CloserThanFirstOrder)
{
  for (int q : {3, 4, 5, 8})
  {
    for (double beta : {0.5, 1.0, 2.0})
    {
      const StarModel m = make_model(q, 1.0, beta);
      for (int M : {3, 6, 15, 40})
      {
        for (int n = 0; n < m.p(); ++n)
        {
          const complex root = solve_branch(m, M, n).epsilon;
          const double e1 = std::abs(estimate_first_order(m, M, n).epsilon - root);
          const double e2 = std::abs(estimate_second_order(m, M, n).epsilon - root);
          EXPECT_LT(e2, e1) << "q = " << q << " beta = " << beta << " M = " << M << " n = " << n;
        }
      }
    }
  }
}

TEST(Iterated, FirstStepStartsFromTheSeed)
{
  const StarModel m = make_model(4, 1.0, 1.0);
  const complex seed = estimate_first_order(m, 7, 1).epsilon;
  const AsymptoticEstimate one = refine_iteratively(m, 7, 1, 1, 1e300);
  const complex expected = std::atan(
      principal_power(m.beta(), 2.0) * principal_power(window_center(7) + seed, -2.0) *
      branch_phase(2, 1));
  EXPECT_EQ(one.iterations, 1);
  EXPECT_LT(std::abs(one.epsilon - expected), 1e-18);
  EXPECT_EQ(one.order, EstimateOrder::iterated);
  EXPECT_FALSE(one.claimed_rel_error_exponent.has_value());
}

TEST(Iterated, ConvergesToBranchRoot)
{
  const StarModel q3 = make_model(3, 1.0, 1.0);
  const AsymptoticEstimate e = refine_iteratively(q3, 5, 0, 20, 1e-12);
  EXPECT_LE(e.iterations, 20);
  const complex root = solve_branch(q3, 5, 0).epsilon;
  EXPECT_LT(std::abs(e.epsilon - root), 1e-11);

  const StarModel q5 = make_model(5, 1.0, 2.0);
  for (int n = 0; n < 3; ++n)
  {
    const AsymptoticEstimate r = refine_iteratively(q5, 3, n);
    EXPECT_LT(std::abs(r.epsilon), pi / 4);
    EXPECT_LT(std::abs(r.epsilon - solve_branch(q5, 3, n).epsilon), 1e-10);
  }
}

TEST(Iterated, AgreesWithNewtonForLargeWindows)
{
  for (int q : {3, 4, 5, 8})
  {
    const StarModel m = make_model(q, 1.0, 1.0);
    for (int M : {10, 25, 60})
    {
      for (int n = 0; n < m.p(); ++n)
      {
        const ComplexRoot root = solve_branch(m, M, n);
        const complex it = refine_iteratively(m, M, n).epsilon;
        EXPECT_LT(std::abs(it - root.epsilon), 1e-10 * (1.0 + std::abs(root.kappa)));
      }
    }
  }
}

TEST(Iterated, ReportsNonConvergence)
{
  try
  {
    refine_iteratively(make_model(5, 1.0, 2.0), 3, 0, 2, 1e-30);
    FAIL() << "expected non-convergence";
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.diagnostic(), Diagnostic::iteration_nonconvergence);
    EXPECT_NE(std::string(e.what()).find("last iterates"), std::string::npos);
  }
}

TEST(OrderFit, ExactPowerLaw)
{
  std::vector<OrderSample> samples;
  for (int M = 10; M <= 200; M += 10)
  {
    samples.push_back({M, 1.0 / (static_cast<double>(M) * M)});
  }
  const OrderFit fit = fit_error_order(samples);
  EXPECT_NEAR(fit.slope, -2.0, 1e-6);
  EXPECT_GT(fit.r_squared, 0.999999);
  EXPECT_LE(fit.r_squared, 1.0);
  EXPECT_TRUE(fit.warnings.empty());
}

TEST(OrderFit, DropsNoiseFloorAndNeedsFiveWindows)
{
  std::vector<OrderSample> samples = {{10, 1e-3}, {20, 1e-4}, {30, 0.0}, {40, 1e-17},
                                      {50, 1e-5}, {60, 5e-6}};
  try
  {
    fit_error_order(samples);
    FAIL() << "expected insufficient samples";
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.diagnostic(), Diagnostic::insufficient_samples);
  }
  samples.push_back({70, 3e-6});
  const OrderFit fit = fit_error_order(samples);
  EXPECT_EQ(fit.samples.size(), 5u);
  EXPECT_EQ(fit.warnings.size(), 2u);
}

TEST(OrderMeasurement, FirstOrderRateForEightEdges)
{
  const OrderMeasurement m =
      measure_error_order(make_model(8, 1.0, 1.0), 0, 10, 200, EstimateOrder::first, 2);
  EXPECT_DOUBLE_EQ(m.claimed_exponent, -4.0 / 3.0);
  EXPECT_LE(m.fit.slope, m.claimed_exponent);
  EXPECT_GT(m.fit.r_squared, 0.99);
  // Measured rate is -(2 + 2/p), steeper than the stated bound.
  EXPECT_NEAR(m.fit.slope, -7.0 / 3.0, 0.1);
}

TEST(OrderMeasurement, SampleGenerationIsDeterministicAcrossThreads)
{
  const StarModel model = make_model(4, 1.0, 1.0);
  const auto a = order_samples(model, 1, 10, 60, EstimateOrder::second, 1);
  const auto b = order_samples(model, 1, 10, 60, EstimateOrder::second, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    EXPECT_EQ(a[i].window, b[i].window);
    EXPECT_EQ(a[i].relative_error, b[i].relative_error);
  }
}

}  // namespace
}  // namespace stargraph
