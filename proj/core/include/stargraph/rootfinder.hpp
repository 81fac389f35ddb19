// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stargraph/model.hpp"

namespace stargraph
{

enum class RootMethod
{
  contour,
  branch,
  special_p0,
};

std::string to_string(RootMethod m);
std::optional<RootMethod> parse_root_method(const std::string &s);

// A located eigen-root. When `window` is set the root is stored as
// kappa = (2M+1) pi / 2 + epsilon with |epsilon| < pi/4; epsilon then carries more
// relative precision than kappa itself and residual_g is evaluated from it.
struct ComplexRoot
{
  complex kappa;
  complex epsilon;
  std::optional<int> window;  // M
  std::optional<int> branch;  // n
  double residual_g = 0.0;
  double residual_oracle = 0.0;
  RootMethod method = RootMethod::contour;
  bool ambiguous_branch = false;
  bool possible_multiple = false;
};

struct Rectangle
{
  double re_min, re_max, im_min, im_max;
};

struct Disc
{
  complex center;
  double radius;
};

struct ContourRegion
{
  std::variant<Rectangle, Disc> shape;
  std::optional<int> winding;

  static ContourRegion rectangle(double re_min, double re_max, double im_min, double im_max);
  static ContourRegion disc(complex center, double radius);
  // Disc of radius pi/4 about (2M+1) pi / 2.
  static ContourRegion window(int M);

  bool contains(complex z) const;
};

// kappa_n = n pi / 2, n = 1..count. Independent of beta.
std::vector<SpectralPoint> real_roots(const StarModel &model, int count);

struct WindingOptions
{
  int initial_points_per_side = 64;
  int max_points_per_side = 1 << 20;
};

// Number of zeros of G inside the region (argument principle). The boundary is walked
// with adaptive refinement until every phase step is below pi/2. Throws
// Diagnostic::boundary_too_close if the refinement cap is hit.
int winding_count(const StarModel &model, const ContourRegion &region,
                  const WindingOptions &opts = {});

struct SearchOptions
{
  double tol = 1e-13;
  double dedup_distance = 1e-8;
  int max_newton_iterations = 50;
  int max_depth = 60;
  // Processing order of pending sub-regions is shuffled with this seed when set. The
  // result is sorted, so it must not depend on the order.
  std::optional<std::uint64_t> traversal_seed;
  WindingOptions winding;
};

struct UnresolvedRegion
{
  Rectangle rect;
  int winding = 0;
  std::string reason;
};

struct RegionSearch
{
  std::vector<ComplexRoot> roots;  // sorted by (Re kappa, Im kappa)
  std::vector<UnresolvedRegion> unresolved;
  int winding = 0;
  std::vector<std::string> diagnostics;

  bool complete() const { return unresolved.empty() && static_cast<int>(roots.size()) == winding; }
};

RegionSearch find_roots_in_region(const StarModel &model, const ContourRegion &region,
                                  double tol = 1e-13);
RegionSearch find_roots_in_region(const StarModel &model, const ContourRegion &region,
                                  const SearchOptions &opts);

// Root of branch n in window M, seeded by the asymptotic estimates and polished by Newton
// on G. Throws Diagnostic::invalid_argument for n outside [0, p-1] and
// Diagnostic::window_escape when the converged |epsilon| >= pi/4.
ComplexRoot solve_branch(const StarModel &model, int M, int n, double tol = 1e-13);

// q = 2: the single beta-dependent root kappa = beta.
ComplexRoot special_p0_root(const StarModel &model);

// Fills window/epsilon (polishing in window coordinates), both residuals and, for p >= 1,
// the nearest-seed branch label.
ComplexRoot finalize_root(const StarModel &model, complex kappa, RootMethod method,
                          double tol = 1e-13);

// Sort by (Re kappa, Im kappa) and drop roots closer than `distance` to a kept one.
void sort_and_deduplicate(std::vector<ComplexRoot> &roots, double distance = 1e-8);

}  // namespace stargraph
