// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

namespace stargraph
{

using complex = std::complex<double>;

// Equilateral q-pointed star graph with rotating complex Robin couplings at the free
// ends. The coupling on edge j is alpha * exp(i j phi), phi = 2 pi / q. Immutable; use
// make_model() to construct a validated instance.
class StarModel
{
public:
  int q() const noexcept { return q_; }
  double length() const noexcept { return length_; }
  complex alpha() const noexcept { return alpha_; }

  // Derived quantities.
  int p() const noexcept { return q_ - 2; }
  complex beta() const noexcept { return beta_; }
  double phi() const noexcept { return phi_; }

  friend StarModel make_model(int q, double length, complex alpha);

private:
  StarModel(int q, double length, complex alpha);

  int q_;
  double length_;
  complex alpha_;
  complex beta_;
  double phi_;
};

// Throws Error with Diagnostic::invalid_edge_count (q < 2), invalid_length (L <= 0 or
// non-finite) or zero_coupling (alpha == 0).
StarModel make_model(int q, double length, complex alpha);

// Dimensionless wavenumber kappa = k L together with its energy E = k^2 (units 1/L^2).
struct SpectralPoint
{
  complex kappa;
  complex energy;
};

complex kappa_to_energy(const StarModel &model, complex kappa);
SpectralPoint spectral_point(const StarModel &model, complex kappa);

// Generalized time reversal: alpha -> alpha * exp(-2 pi i / q).
StarModel apply_time_reversal(const StarModel &model);

// Cyclic relabeling of the star's edges, e_j -> e_{j+1 mod q}, and its powers.
class EdgePermutation
{
public:
  explicit EdgePermutation(std::vector<int> image);

  int size() const noexcept { return static_cast<int>(image_.size()); }
  int operator()(int edge) const { return image_.at(static_cast<std::size_t>(edge)); }
  const std::vector<int> &image() const noexcept { return image_; }

  EdgePermutation compose(const EdgePermutation &inner) const;  // (*this) o inner
  EdgePermutation power(int k) const;
  bool is_identity() const noexcept;
  // Smallest k >= 1 with power(k) == identity.
  int order() const;

  friend bool operator==(const EdgePermutation &, const EdgePermutation &) = default;

private:
  std::vector<int> image_;
};

EdgePermutation parity_permutation(int q);

}  // namespace stargraph
