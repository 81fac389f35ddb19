// SPDX-License-Identifier: Apache-2.0

#include "stargraph/model.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "stargraph/error.hpp"

namespace stargraph
{

std::string_view to_string(Diagnostic d)
{
  switch (d)
  {
    case Diagnostic::invalid_edge_count:
      return "invalid edge count";
    case Diagnostic::invalid_length:
      return "invalid edge length";
    case Diagnostic::zero_coupling:
      return "zero coupling";
    case Diagnostic::invalid_argument:
      return "invalid argument";
    case Diagnostic::pole_adjacent:
      return "pole-adjacent evaluation";
    case Diagnostic::boundary_too_close:
      return "boundary too close to root";
    case Diagnostic::newton_nonconvergence:
      return "newton non-convergence";
    case Diagnostic::window_escape:
      return "window escape";
    case Diagnostic::resonant_denominator:
      return "resonant denominator";
    case Diagnostic::degenerate_coincidence:
      return "degenerate coincidence";
    case Diagnostic::iteration_nonconvergence:
      return "iteration non-convergence";
    case Diagnostic::insufficient_samples:
      return "insufficient samples";
    case Diagnostic::schema_error:
      return "schema error";
  }
  return "unknown";
}

StarModel::StarModel(int q, double length, complex alpha)
  : q_(q), length_(length), alpha_(alpha), beta_(alpha * length),
    phi_(2.0 * std::numbers::pi / q)
{
}

StarModel make_model(int q, double length, complex alpha)
{
  if (q < 2)
  {
    throw Error(Diagnostic::invalid_edge_count,
                "star graph needs q >= 2 edges, got q = " + std::to_string(q));
  }
  if (!(length > 0.0) || !std::isfinite(length))
  {
    throw Error(Diagnostic::invalid_length,
                "edge length must be positive and finite, got L = " + std::to_string(length));
  }
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
  {
    throw Error(Diagnostic::invalid_argument, "coupling alpha must be finite");
  }
  if (alpha == complex(0.0, 0.0))
  {
    throw Error(Diagnostic::zero_coupling,
                "alpha = 0 is not supported: the branch equations degenerate at beta = 0");
  }
  return StarModel(q, length, alpha);
}

complex kappa_to_energy(const StarModel &model, complex kappa)
{
  const complex k = kappa / model.length();
  return k * k;
}

SpectralPoint spectral_point(const StarModel &model, complex kappa)
{
  return {kappa, kappa_to_energy(model, kappa)};
}

StarModel apply_time_reversal(const StarModel &model)
{
  const complex rotation = std::polar(1.0, -2.0 * std::numbers::pi / model.q());
  return make_model(model.q(), model.length(), model.alpha() * rotation);
}

EdgePermutation::EdgePermutation(std::vector<int> image) : image_(std::move(image))
{
  std::vector<bool> seen(image_.size(), false);
  for (int v : image_)
  {
    if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)])
    {
      throw Error(Diagnostic::invalid_argument, "edge map is not a permutation");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

EdgePermutation EdgePermutation::compose(const EdgePermutation &inner) const
{
  if (inner.size() != size())
  {
    throw Error(Diagnostic::invalid_argument, "permutation sizes differ");
  }
  std::vector<int> out(image_.size());
  for (std::size_t j = 0; j < out.size(); ++j)
  {
    out[j] = (*this)(inner(static_cast<int>(j)));
  }
  return EdgePermutation(std::move(out));
}

EdgePermutation EdgePermutation::power(int k) const
{
  if (k < 0)
  {
    throw Error(Diagnostic::invalid_argument, "negative permutation power");
  }
  std::vector<int> id(image_.size());
  std::iota(id.begin(), id.end(), 0);
  EdgePermutation result(std::move(id));
  for (int i = 0; i < k; ++i)
  {
    result = compose(result);
  }
  return result;
}

bool EdgePermutation::is_identity() const noexcept
{
  for (std::size_t j = 0; j < image_.size(); ++j)
  {
    if (image_[j] != static_cast<int>(j))
    {
      return false;
    }
  }
  return true;
}

int EdgePermutation::order() const
{
  EdgePermutation current = *this;
  for (int k = 1; k <= size(); ++k)
  {
    if (current.is_identity())
    {
      return k;
    }
    current = compose(current);
  }
  // A permutation of n points can have order larger than n (lcm of cycle lengths).
  int k = size() + 1;
  while (!current.is_identity())
  {
    current = compose(current);
    ++k;
  }
  return k;
}

EdgePermutation parity_permutation(int q)
{
  if (q < 2)
  {
    throw Error(Diagnostic::invalid_edge_count, "parity needs q >= 2");
  }
  std::vector<int> image(static_cast<std::size_t>(q));
  for (int j = 0; j < q; ++j)
  {
    image[static_cast<std::size_t>(j)] = (j + 1) % q;
  }
  return EdgePermutation(std::move(image));
}

}  // namespace stargraph
