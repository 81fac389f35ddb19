// SPDX-License-Identifier: Apache-2.0

#include "stargraph/rootfinder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "stargraph/asymptotics.hpp"
#include "stargraph/error.hpp"
#include "stargraph/secular.hpp"

namespace stargraph
{

namespace
{

using std::numbers::pi;

constexpr double kWindowRadius = pi / 4.0;

bool finite(complex z)
{
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void require_positive_p(const StarModel &model, const char *what)
{
  if (model.p() < 1)
  {
    throw Error(Diagnostic::invalid_argument,
                std::string(what) + " needs p = q - 2 >= 1; use special_p0_root for q = 2");
  }
}

// ---------------------------------------------------------------------------------------
// Argument principle

double wrap_phase(double d)
{
  while (d > pi)
  {
    d -= 2.0 * pi;
  }
  while (d <= -pi)
  {
    d += 2.0 * pi;
  }
  return d;
}

struct BoundarySample
{
  double phase;
  double log_derivative;  // |G'/G|, infinite if it could not be formed
};

BoundarySample sample_at(const StarModel &model, complex z)
{
  const ScaledValue g = eval_reduced_scaled(model, z);
  if (!finite(g.value) || g.value == complex(0.0, 0.0))
  {
    std::ostringstream msg;
    msg << "boundary too close to root: G vanishes or overflows at " << z;
    throw Error(Diagnostic::boundary_too_close, msg.str());
  }
  const double ld = std::abs(g.derivative / g.value);
  return {std::arg(g.value), std::isfinite(ld) ? ld : std::numeric_limits<double>::infinity()};
}

// Total phase change of G along one boundary side z(t), t in [0, 1]. A segment is
// accepted when its phase step is below pi/2 and its length times |G'/G| at both ends is
// below 1; the second test stops sparse sampling from aliasing past clustered roots.
template <typename Path>
double side_phase_change(const StarModel &model, const Path &path, const WindingOptions &opts)
{
  const int initial = std::max(opts.initial_points_per_side, 1);
  int max_depth = 0;
  while ((initial << max_depth) < opts.max_points_per_side && max_depth < 40)
  {
    ++max_depth;
  }

  struct Segment
  {
    double t0, t1;
    BoundarySample s0, s1;
    int depth;
  };

  double total = 0.0;
  double t_prev = 0.0;
  BoundarySample sample_prev = sample_at(model, path(0.0));
  std::vector<Segment> stack;
  for (int i = 1; i <= initial; ++i)
  {
    const double t = static_cast<double>(i) / initial;
    const BoundarySample sample = sample_at(model, path(t));
    stack.push_back({t_prev, t, sample_prev, sample, 0});
    while (!stack.empty())
    {
      Segment seg = stack.back();
      stack.pop_back();
      const double step = wrap_phase(seg.s1.phase - seg.s0.phase);
      const double length = std::abs(path(seg.t1) - path(seg.t0));
      const double variation =
          length * std::max(seg.s0.log_derivative, seg.s1.log_derivative);
      if (std::abs(step) < pi / 2.0 && variation < 1.0)
      {
        total += step;
        continue;
      }
      if (seg.depth >= max_depth)
      {
        std::ostringstream msg;
        msg << "boundary too close to root: phase refinement limit reached near "
            << path(0.5 * (seg.t0 + seg.t1));
        throw Error(Diagnostic::boundary_too_close, msg.str());
      }
      const double tm = 0.5 * (seg.t0 + seg.t1);
      const BoundarySample sm = sample_at(model, path(tm));
      // Left half processed first to keep the summation order fixed.
      stack.push_back({tm, seg.t1, sm, seg.s1, seg.depth + 1});
      stack.push_back({seg.t0, tm, seg.s0, sm, seg.depth + 1});
    }
    t_prev = t;
    sample_prev = sample;
  }
  return total;
}

int rectangle_winding(const StarModel &model, const Rectangle &r, const WindingOptions &opts)
{
  const std::array<complex, 4> corners = {complex(r.re_min, r.im_min),
                                          complex(r.re_max, r.im_min),
                                          complex(r.re_max, r.im_max),
                                          complex(r.re_min, r.im_max)};
  double total = 0.0;
  for (int s = 0; s < 4; ++s)
  {
    const complex a = corners[static_cast<std::size_t>(s)];
    const complex b = corners[static_cast<std::size_t>((s + 1) % 4)];
    total += side_phase_change(model, [&](double t) { return a + t * (b - a); }, opts);
  }
  return static_cast<int>(std::lround(total / (2.0 * pi)));
}

int disc_winding(const StarModel &model, const Disc &d, const WindingOptions &opts)
{
  double total = 0.0;
  for (int s = 0; s < 4; ++s)
  {
    total += side_phase_change(
        model,
        [&](double t) { return d.center + std::polar(d.radius, 0.5 * pi * (s + t)); }, opts);
  }
  return static_cast<int>(std::lround(total / (2.0 * pi)));
}

void validate_region(const ContourRegion &region)
{
  if (const auto *r = std::get_if<Rectangle>(&region.shape))
  {
    if (!(r->re_max > r->re_min) || !(r->im_max > r->im_min))
    {
      throw Error(Diagnostic::invalid_argument, "degenerate rectangle");
    }
  }
  else
  {
    const auto &d = std::get<Disc>(region.shape);
    if (!(d.radius > 0.0))
    {
      throw Error(Diagnostic::invalid_argument, "disc radius must be positive");
    }
  }
}

// ---------------------------------------------------------------------------------------
// Newton

struct NewtonResult
{
  complex z;
  bool converged = false;
  bool flat_derivative = false;
};

NewtonResult newton_on_g(const StarModel &model, complex z, double tol, int max_iterations)
{
  NewtonResult out{z};
  int restarts = 0;
  for (int it = 0; it < max_iterations; ++it)
  {
    const ReducedEval e = eval_reduced_full(model, out.z);
    if (!finite(e.value) || !finite(e.derivative))
    {
      return out;
    }
    if (e.value == complex(0.0, 0.0))
    {
      out.converged = true;
      return out;
    }
    if (std::abs(e.derivative) < 1e-12 * e.scale)
    {
      out.flat_derivative = true;
      if (++restarts > 3)
      {
        return out;
      }
      out.z += std::polar(1e-3 * (1.0 + std::abs(out.z)), 2.39996322972865332 * restarts);
      continue;
    }
    const complex step = e.value / e.derivative;
    out.z -= step;
    if (!finite(out.z))
    {
      return out;
    }
    if (std::abs(step) < tol * (1.0 + std::abs(out.z)))
    {
      out.converged = true;
      return out;
    }
  }
  return out;
}

// Newton on G in window coordinates lambda = (M + 1/2) pi + eps.
NewtonResult newton_in_window(const StarModel &model, int M, complex eps, double tol,
                              int max_iterations)
{
  NewtonResult out{eps};
  const double center = window_center(M);
  int polish = -1;
  for (int it = 0; it < max_iterations + 2; ++it)
  {
    const ReducedEval e = eval_reduced_window(model, M, out.z);
    if (!finite(e.value) || !finite(e.derivative))
    {
      return out;
    }
    if (e.value == complex(0.0, 0.0))
    {
      out.converged = true;
      return out;
    }
    if (std::abs(e.derivative) < 1e-12 * e.scale)
    {
      out.flat_derivative = true;
      return out;
    }
    const complex step = e.value / e.derivative;
    out.z -= step;
    if (!finite(out.z))
    {
      return out;
    }
    if (polish >= 0)
    {
      // Two extra quadratic steps after the tolerance test bring eps to full precision.
      if (++polish >= 2)
      {
        return out;
      }
      continue;
    }
    if (std::abs(step) < tol * (1.0 + std::abs(center + out.z)))
    {
      out.converged = true;
      polish = 0;
    }
  }
  return out;
}

// Branch function tan(eps) - (beta / (Lambda + eps))^a * phase and its derivative.
NewtonResult newton_on_branch(const StarModel &model, int M, int n, complex eps, double tol,
                              int max_iterations)
{
  NewtonResult out{eps};
  const double a = 1.0 + 2.0 / model.p();
  const double center = window_center(M);
  // beta^a and lambda^-a taken separately: Re lambda > 0 keeps the second continuous.
  const complex coupling = principal_power(model.beta(), a) * branch_phase(model.p(), n);
  for (int it = 0; it < max_iterations; ++it)
  {
    const complex lambda = center + out.z;
    const complex rhs = coupling * principal_power(lambda, -a);
    const complex t = std::tan(out.z);
    const complex f = t - rhs;
    const complex df = 1.0 + t * t + a * rhs / lambda;
    if (!finite(f) || !finite(df) || df == complex(0.0, 0.0))
    {
      return out;
    }
    const complex step = f / df;
    out.z -= step;
    if (!finite(out.z))
    {
      return out;
    }
    if (std::abs(step) < tol * (1.0 + std::abs(lambda)))
    {
      out.converged = true;
      return out;
    }
  }
  return out;
}

int nearest_window(complex kappa)
{
  return static_cast<int>(std::lround(kappa.real() / pi - 0.5));
}

void assign_branch_label(const StarModel &model, ComplexRoot &root)
{
  if (!root.window || model.p() < 1)
  {
    return;
  }
  const int p = model.p();
  if (p == 1)
  {
    root.branch = 0;
    return;
  }
  double best = std::numeric_limits<double>::infinity();
  double second = std::numeric_limits<double>::infinity();
  int best_n = 0;
  for (int n = 0; n < p; ++n)
  {
    complex seed;
    try
    {
      seed = estimate_second_order(model, *root.window, n).epsilon;
    }
    catch (const Error &)
    {
      seed = estimate_first_order(model, *root.window, n).epsilon;
    }
    const double d = std::abs(seed - root.epsilon);
    if (d < best)
    {
      second = best;
      best = d;
      best_n = n;
    }
    else if (d < second)
    {
      second = d;
    }
  }
  root.branch = best_n;
  root.ambiguous_branch = second < 2.0 * best;
}

struct Task
{
  Rectangle rect;
  int winding;
  int depth;
};

bool inside(const Rectangle &r, complex z, double margin)
{
  return z.real() >= r.re_min - margin && z.real() <= r.re_max + margin &&
         z.imag() >= r.im_min - margin && z.imag() <= r.im_max + margin;
}

complex centroid(const Rectangle &r)
{
  return {0.5 * (r.re_min + r.re_max), 0.5 * (r.im_min + r.im_max)};
}

// Off-center split fractions; a split line through a root is retried with the next one.
constexpr std::array<double, 6> kSplitFractions = {0.5 + 0.0123, 0.5 - 0.0271, 0.5 + 0.0619,
                                                   0.5 - 0.0937, 0.5 + 0.1413, 0.5 - 0.1789};

std::pair<Rectangle, Rectangle> split(const Rectangle &r, double fraction)
{
  Rectangle a = r, b = r;
  if (r.re_max - r.re_min >= r.im_max - r.im_min)
  {
    const double x = r.re_min + fraction * (r.re_max - r.re_min);
    a.re_max = x;
    b.re_min = x;
  }
  else
  {
    const double y = r.im_min + fraction * (r.im_max - r.im_min);
    a.im_max = y;
    b.im_min = y;
  }
  return {a, b};
}

// Winding of a top-level rectangle, nudging it outwards if its boundary grazes a root.
std::pair<Rectangle, int> robust_rectangle_winding(const StarModel &model, Rectangle r,
                                                   const WindingOptions &opts,
                                                   std::vector<std::string> &diagnostics)
{
  const double size = std::max(r.re_max - r.re_min, r.im_max - r.im_min);
  for (int attempt = 0; attempt < 8; ++attempt)
  {
    try
    {
      const int w = rectangle_winding(model, r, opts);
      if (attempt > 0)
      {
        std::ostringstream msg;
        msg << "search region perturbed outwards by " << 1e-5 * size * attempt
            << " to clear a boundary root";
        diagnostics.push_back(msg.str());
      }
      return {r, w};
    }
    catch (const Error &e)
    {
      if (e.diagnostic() != Diagnostic::boundary_too_close)
      {
        throw;
      }
      const double grow = 1e-5 * size * (attempt + 1) * 1.37;
      r.re_min -= grow;
      r.re_max += grow;
      r.im_min -= grow;
      r.im_max += grow;
    }
  }
  throw Error(Diagnostic::boundary_too_close,
              "boundary too close to root: region could not be perturbed clear");
}

}  // namespace

// ---------------------------------------------------------------------------------------

std::string to_string(RootMethod m)
{
  switch (m)
  {
    case RootMethod::contour:
      return "contour";
    case RootMethod::branch:
      return "branch";
    case RootMethod::special_p0:
      return "special_p0";
  }
  return "unknown";
}

std::optional<RootMethod> parse_root_method(const std::string &s)
{
  if (s == "contour")
    return RootMethod::contour;
  if (s == "branch")
    return RootMethod::branch;
  if (s == "special_p0")
    return RootMethod::special_p0;
  return std::nullopt;
}

ContourRegion ContourRegion::rectangle(double re_min, double re_max, double im_min,
                                       double im_max)
{
  return {Rectangle{re_min, re_max, im_min, im_max}, std::nullopt};
}

ContourRegion ContourRegion::disc(complex center, double radius)
{
  return {Disc{center, radius}, std::nullopt};
}

ContourRegion ContourRegion::window(int M)
{
  return disc(complex(window_center(M), 0.0), kWindowRadius);
}

bool ContourRegion::contains(complex z) const
{
  if (const auto *r = std::get_if<Rectangle>(&shape))
  {
    return inside(*r, z, 0.0);
  }
  const auto &d = std::get<Disc>(shape);
  return std::abs(z - d.center) < d.radius;
}

std::vector<SpectralPoint> real_roots(const StarModel &model, int count)
{
  if (count < 1)
  {
    throw Error(Diagnostic::invalid_argument, "count must be >= 1");
  }
  std::vector<SpectralPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int n = 1; n <= count; ++n)
  {
    out.push_back(spectral_point(model, complex(n * pi / 2.0, 0.0)));
  }
  return out;
}

int winding_count(const StarModel &model, const ContourRegion &region,
                  const WindingOptions &opts)
{
  require_positive_p(model, "winding_count");
  validate_region(region);
  const int w = std::visit(
      [&](const auto &shape) {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Rectangle>)
          return rectangle_winding(model, shape, opts);
        else
          return disc_winding(model, shape, opts);
      },
      region.shape);
  if (w < 0)
  {
    throw Error(Diagnostic::boundary_too_close,
                "boundary too close to root: negative winding for an entire function");
  }
  return w;
}

void sort_and_deduplicate(std::vector<ComplexRoot> &roots, double distance)
{
  std::sort(roots.begin(), roots.end(), [](const ComplexRoot &a, const ComplexRoot &b) {
    if (a.kappa.real() != b.kappa.real())
      return a.kappa.real() < b.kappa.real();
    return a.kappa.imag() < b.kappa.imag();
  });
  std::vector<ComplexRoot> kept;
  for (auto &r : roots)
  {
    bool duplicate = false;
    for (auto &k : kept)
    {
      if (std::abs(k.kappa - r.kappa) < distance)
      {
        if (r.residual_g < k.residual_g)
        {
          r.possible_multiple = r.possible_multiple || k.possible_multiple;
          k = r;
        }
        duplicate = true;
        break;
      }
    }
    if (!duplicate)
    {
      kept.push_back(r);
    }
  }
  roots = std::move(kept);
}

ComplexRoot finalize_root(const StarModel &model, complex kappa, RootMethod method,
                          double tol)
{
  ComplexRoot root;
  root.method = method;
  root.kappa = kappa;

  const int M = nearest_window(kappa);
  const complex eps0 = kappa - window_center(M);
  bool windowed = false;
  if (model.p() >= 1 && std::abs(eps0) < kWindowRadius)
  {
    const NewtonResult polished = newton_in_window(model, M, eps0, tol, 50);
    if (polished.converged && std::abs(polished.z) < kWindowRadius)
    {
      root.epsilon = polished.z;
      root.kappa = window_center(M) + polished.z;
      const ReducedEval e = eval_reduced_window(model, M, polished.z);
      root.residual_g = e.scale > 0.0 ? std::abs(e.value) / e.scale : std::abs(e.value);
      windowed = true;
      if (M >= 0)
      {
        root.window = M;
      }
    }
  }
  if (!windowed)
  {
    if (model.p() >= 1)
    {
      const ReducedEval e = eval_reduced_full(model, kappa);
      root.residual_g = e.scale > 0.0 ? std::abs(e.value) / e.scale : std::abs(e.value);
    }
    root.epsilon = kappa - window_center(M);
  }
  root.residual_oracle = oracle_residual(model, root.kappa);
  assign_branch_label(model, root);
  return root;
}

RegionSearch find_roots_in_region(const StarModel &model, const ContourRegion &region,
                                  double tol)
{
  SearchOptions opts;
  opts.tol = tol;
  return find_roots_in_region(model, region, opts);
}

RegionSearch find_roots_in_region(const StarModel &model, const ContourRegion &region,
                                  const SearchOptions &opts)
{
  require_positive_p(model, "find_roots_in_region");
  validate_region(region);
  RegionSearch out;

  Rectangle top{};
  int top_winding = 0;
  const Disc *disc = std::get_if<Disc>(&region.shape);
  if (disc)
  {
    out.winding = region.winding ? *region.winding : winding_count(model, region, opts.winding);
    if (out.winding == 0)
    {
      return out;
    }
    const double h = disc->radius * 1.0007;
    std::tie(top, top_winding) = robust_rectangle_winding(
        model,
        Rectangle{disc->center.real() - h, disc->center.real() + h, disc->center.imag() - h,
                  disc->center.imag() + h},
        opts.winding, out.diagnostics);
  }
  else
  {
    std::tie(top, top_winding) = robust_rectangle_winding(
        model, std::get<Rectangle>(region.shape), opts.winding, out.diagnostics);
    out.winding = top_winding;
  }

  std::deque<Task> pending{{top, top_winding, 0}};
  std::mt19937_64 rng(opts.traversal_seed.value_or(0));
  std::vector<ComplexRoot> found;

  auto try_newton = [&](const Rectangle &r, complex start, bool &flat) -> std::optional<complex> {
    const NewtonResult res = newton_on_g(model, start, opts.tol, opts.max_newton_iterations);
    flat = flat || res.flat_derivative;
    const double margin = 1e-9 * (1.0 + std::abs(start));
    if (res.converged && inside(r, res.z, margin))
    {
      return res.z;
    }
    return std::nullopt;
  };

  while (!pending.empty())
  {
    std::size_t pick = 0;
    if (opts.traversal_seed)
    {
      pick = std::uniform_int_distribution<std::size_t>(0, pending.size() - 1)(rng);
    }
    const Task task = pending[pick];
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));

    if (task.winding <= 0)
    {
      continue;
    }
    const Rectangle &r = task.rect;
    const double extent = std::max(r.re_max - r.re_min, r.im_max - r.im_min);
    const complex c = centroid(r);
    const bool tiny = extent < 1e-11 * (1.0 + std::abs(c));

    if (task.winding == 1 || tiny || task.depth >= opts.max_depth)
    {
      bool flat = false;
      std::optional<complex> z = try_newton(r, c, flat);
      for (int i = 0; !z && i < 3; ++i)
      {
        for (int j = 0; !z && j < 3; ++j)
        {
          const complex start(r.re_min + (i + 0.5) / 3.0 * (r.re_max - r.re_min),
                              r.im_min + (j + 0.5) / 3.0 * (r.im_max - r.im_min));
          z = try_newton(r, start, flat);
        }
      }
      if (z && (task.winding == 1 || tiny || task.depth >= opts.max_depth))
      {
        ComplexRoot root = finalize_root(model, *z, RootMethod::contour, opts.tol);
        root.possible_multiple = flat || task.winding > 1;
        if (task.winding > 1)
        {
          std::ostringstream msg;
          msg << "possible multiple root near " << root.kappa << " (winding "
              << task.winding << " in an unsplittable cell)";
          out.diagnostics.push_back(msg.str());
          out.unresolved.push_back({r, task.winding, "possible multiple root"});
        }
        found.push_back(root);
        continue;
      }
      if (task.depth >= opts.max_depth || tiny)
      {
        out.unresolved.push_back({r, task.winding, "newton non-convergence"});
        continue;
      }
      // Newton wandered off: shrink the cell and retry.
    }

    bool done = false;
    for (double fraction : kSplitFractions)
    {
      const auto [a, b] = split(r, fraction);
      try
      {
        const int wa = rectangle_winding(model, a, opts.winding);
        const int wb = rectangle_winding(model, b, opts.winding);
        if (wa < 0 || wb < 0 || wa + wb != task.winding)
        {
          continue;
        }
        pending.push_back({a, wa, task.depth + 1});
        pending.push_back({b, wb, task.depth + 1});
        done = true;
        break;
      }
      catch (const Error &e)
      {
        if (e.diagnostic() != Diagnostic::boundary_too_close)
        {
          throw;
        }
      }
    }
    if (!done)
    {
      out.unresolved.push_back({r, task.winding, "subdivision failed: boundary too close"});
    }
  }

  sort_and_deduplicate(found, opts.dedup_distance);
  if (disc)
  {
    std::erase_if(found, [&](const ComplexRoot &root) { return !region.contains(root.kappa); });
  }
  out.roots = std::move(found);
  if (static_cast<int>(out.roots.size()) != out.winding)
  {
    std::ostringstream msg;
    msg << "root count " << out.roots.size() << " differs from winding count " << out.winding;
    out.diagnostics.push_back(msg.str());
  }
  for (const auto &u : out.unresolved)
  {
    std::ostringstream msg;
    msg << "unresolved sub-region [" << u.rect.re_min << ", " << u.rect.re_max << "] x ["
        << u.rect.im_min << ", " << u.rect.im_max << "] winding " << u.winding << ": "
        << u.reason;
    out.diagnostics.push_back(msg.str());
  }
  return out;
}

ComplexRoot solve_branch(const StarModel &model, int M, int n, double tol)
{
  require_positive_p(model, "solve_branch");
  if (n < 0 || n >= model.p())
  {
    throw Error(Diagnostic::invalid_argument,
                "branch index n = " + std::to_string(n) + " outside [0, p-1]");
  }
  if (M < 0)
  {
    throw Error(Diagnostic::invalid_argument, "window index M must be >= 0");
  }
  if (std::abs(model.beta()) == 0.0)
  {
    throw Error(Diagnostic::zero_coupling, "solve_branch needs beta != 0");
  }

  complex seed;
  if (M >= 2)
  {
    try
    {
      seed = estimate_second_order(model, M, n).epsilon;
    }
    catch (const Error &)
    {
      seed = estimate_first_order(model, M, n).epsilon;
    }
  }
  else
  {
    seed = estimate_first_order(model, M, n).epsilon;
  }

  // Solving the branch equation first pins the root to branch n; Newton on G then
  // polishes it.
  const NewtonResult branch = newton_on_branch(model, M, n, seed, tol, 50);
  const complex start = (branch.converged && std::abs(branch.z) < kWindowRadius) ? branch.z : seed;
  const NewtonResult polished = newton_in_window(model, M, start, tol, 50);
  if (!polished.converged)
  {
    std::ostringstream msg;
    msg << "newton non-convergence for branch n = " << n << " in window M = " << M;
    throw Error(Diagnostic::newton_nonconvergence, msg.str());
  }
  if (std::abs(polished.z) >= kWindowRadius)
  {
    std::ostringstream msg;
    msg << "window escape: |eps| = " << std::abs(polished.z) << " >= pi/4 for M = " << M
        << ", n = " << n;
    throw Error(Diagnostic::window_escape, msg.str());
  }

  ComplexRoot root;
  root.method = RootMethod::branch;
  root.window = M;
  root.branch = n;
  root.epsilon = polished.z;
  root.kappa = window_center(M) + polished.z;
  const ReducedEval e = eval_reduced_window(model, M, polished.z);
  root.residual_g = e.scale > 0.0 ? std::abs(e.value) / e.scale : std::abs(e.value);
  root.residual_oracle = oracle_residual(model, root.kappa);
  root.possible_multiple = polished.flat_derivative;
  return root;
}

ComplexRoot special_p0_root(const StarModel &model)
{
  if (model.q() != 2)
  {
    throw Error(Diagnostic::invalid_argument, "special_p0_root applies to q = 2 only");
  }
  const complex beta = model.beta();
  if (!(beta.real() > 0.0) || std::abs(beta.imag()) > 1e-14 * std::abs(beta))
  {
    throw Error(Diagnostic::invalid_argument, "special_p0_root needs real positive beta");
  }
  const double b = beta.real();
  const double pole = (std::round(b / pi - 0.5) + 0.5) * pi;
  if (std::abs(b - pole) < 1e-9)
  {
    throw Error(Diagnostic::degenerate_coincidence,
                "degenerate coincidence: beta sits on a pole of tan (odd multiple of pi/2)");
  }
  ComplexRoot root;
  root.method = RootMethod::special_p0;
  root.kappa = complex(b, 0.0);
  root.epsilon = root.kappa - window_center(nearest_window(root.kappa));
  // For p = 0 the numerator factor is kappa^2 - beta^2.
  const double k2 = b * b;
  root.residual_g = std::abs(k2 - b * b) / (k2 + b * b);
  root.residual_oracle = oracle_residual(model, root.kappa);
  return root;
}

}  // namespace stargraph
