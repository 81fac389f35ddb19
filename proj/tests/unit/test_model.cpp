// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <numbers>

#include "stargraph/error.hpp"
#include "stargraph/model.hpp"

namespace stargraph
{
namespace
{

using std::numbers::pi;

Diagnostic diagnostic_of(int q, double length, complex alpha)
{
  try
  {
    make_model(q, length, alpha);
  }
  catch (const Error &e)
  {
    return e.diagnostic();
  }
  ADD_FAILURE() << "expected an error";
  return Diagnostic::invalid_argument;
}

TEST(Model, DerivedQuantities)
{
  const StarModel m = make_model(3, 1.0, 1.0);
  EXPECT_EQ(m.p(), 1);
  EXPECT_EQ(m.beta(), complex(1.0, 0.0));
  EXPECT_DOUBLE_EQ(m.phi(), 2.0 * pi / 3.0);

  const StarModel scaled = make_model(5, 2.5, complex(0.4, -0.2));
  EXPECT_NEAR(std::abs(scaled.beta() - complex(1.0, -0.5)), 0.0, 1e-15);
}

TEST(Model, TwoEdgesAccepted)
{
  const StarModel m = make_model(2, 1.0, 1.0);
  EXPECT_EQ(m.p(), 0);
}

TEST(Model, InvalidParametersHaveDistinctDiagnostics)
{
  EXPECT_EQ(diagnostic_of(1, 1.0, 1.0), Diagnostic::invalid_edge_count);
  EXPECT_EQ(diagnostic_of(3, 0.0, 1.0), Diagnostic::invalid_length);
  EXPECT_EQ(diagnostic_of(3, -1.0, 1.0), Diagnostic::invalid_length);
  EXPECT_EQ(diagnostic_of(3, 1.0, 0.0), Diagnostic::zero_coupling);
}

TEST(Model, KappaToEnergy)
{
  EXPECT_NEAR(kappa_to_energy(make_model(3, 1.0, 1.0), pi / 2).real(), pi * pi / 4, 1e-15);
  EXPECT_NEAR(kappa_to_energy(make_model(3, 2.0, 1.0), pi).real(), pi * pi / 4, 1e-15);
  const complex e = kappa_to_energy(make_model(3, 1.0, 1.0), complex(1.0, 1.0));
  EXPECT_NEAR(std::abs(e - complex(0.0, 2.0)), 0.0, 1e-15);
}

TEST(Model, TimeReversalRotatesCoupling)
{
  const StarModel q4 = apply_time_reversal(make_model(4, 1.0, 1.0));
  EXPECT_NEAR(std::abs(q4.alpha() - complex(0.0, -1.0)), 0.0, 1e-15);

  const StarModel q3 = apply_time_reversal(make_model(3, 1.0, 2.0));
  EXPECT_NEAR(std::abs(q3.alpha() - std::polar(2.0, -2.0 * pi / 3.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(q3.beta() - q3.alpha() * q3.length()), 0.0, 1e-15);

  for (int q : {2, 3, 5, 8})
  {
    StarModel m = make_model(q, 1.3, complex(0.7, 0.2));
    for (int k = 0; k < q; ++k)
    {
      m = apply_time_reversal(m);
    }
    EXPECT_NEAR(std::abs(m.alpha() - complex(0.7, 0.2)), 0.0, 1e-14) << "q = " << q;
  }
}

TEST(Model, ParityPermutation)
{
  const EdgePermutation p2 = parity_permutation(2);
  EXPECT_EQ(p2.image(), (std::vector<int>{1, 0}));
  EXPECT_TRUE(p2.power(2).is_identity());

  const EdgePermutation p3 = parity_permutation(3);
  EXPECT_EQ(p3.image(), (std::vector<int>{1, 2, 0}));
  EXPECT_TRUE(p3.power(3).is_identity());
  EXPECT_FALSE(p3.power(2).is_identity());
  EXPECT_EQ(p3.order(), 3);

  const EdgePermutation p5 = parity_permutation(5);
  EXPECT_TRUE(p5.power(5).is_identity());
  EXPECT_EQ(p5.order(), 5);
  EXPECT_EQ(p5.compose(p5), p5.power(2));
}

TEST(Model, PermutationRejectsNonBijection)
{
  EXPECT_THROW(EdgePermutation({0, 0, 1}), Error);
  EXPECT_THROW(EdgePermutation({0, 3}), Error);
}

}  // namespace
}  // namespace stargraph
