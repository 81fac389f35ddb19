// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stargraph/cli/commands.hpp"
#include "stargraph/error.hpp"
#include "stargraph/parallel.hpp"

namespace stargraph::cli
{

namespace
{

struct Sample
{
  std::vector<complex> roots;
  std::vector<std::string> diagnostics;
};

ContourRegion to_region(const ScanRegion &region)
{
  if (const int *M = std::get_if<int>(&region.shape))
  {
    return ContourRegion::window(*M);
  }
  const Rectangle &r = std::get<Rectangle>(region.shape);
  return ContourRegion::rectangle(r.re_min, r.re_max, r.im_min, r.im_max);
}

Sample solve_sample(const Settings &s, complex alpha, const ContourRegion &region)
{
  Sample out;
  try
  {
    const StarModel model = make_model(s.q, s.length, alpha);
    SearchOptions opts;
    opts.tol = s.tol;
    RegionSearch search = find_roots_in_region(model, region, opts);
    for (const auto &r : search.roots)
    {
      out.roots.push_back(r.kappa);
    }
    out.diagnostics = std::move(search.diagnostics);
    if (!search.complete())
    {
      out.diagnostics.push_back("search incomplete: winding " + std::to_string(search.winding) +
                                ", roots " + std::to_string(search.roots.size()));
    }
  }
  catch (const Error &e)
  {
    out.diagnostics.push_back(e.what());
  }
  return out;
}

}  // namespace

Trajectory cmd_scan(const Settings &s, complex alpha_start, complex alpha_end, int steps,
                    const ScanRegion &region, double threshold)
{
  if (steps < 1)
  {
    throw UsageError("--steps must be >= 1");
  }
  if (!(threshold > 0.0))
  {
    throw UsageError("continuation threshold must be positive");
  }
  if (const int *M = std::get_if<int>(&region.shape); M && *M < 0)
  {
    throw UsageError("scan window must be >= 0");
  }
  if (s.q < 3)
  {
    throw UsageError("scan needs q >= 3; use special-p0 for q = 2");
  }
  const ContourRegion contour = to_region(region);

  Trajectory t;
  t.threshold = threshold;
  std::vector<complex> alphas(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
  {
    const double frac = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
    alphas[i] = alpha_start + frac * (alpha_end - alpha_start);
    t.beta_samples.push_back(alphas[i] * s.length);
  }

  std::vector<Sample> samples(alphas.size());
  parallel_for(alphas.size(), s.threads,
               [&](std::size_t i) { samples[i] = solve_sample(s, alphas[i], contour); });

  // Indices into t.paths of the paths that end at the previous sample.
  std::vector<std::size_t> active;
  for (int i = 0; i < steps; ++i)
  {
    const Sample &sample = samples[i];
    for (const auto &d : sample.diagnostics)
    {
      t.diagnostics.push_back("sample " + std::to_string(i) + ": " + d);
    }
    std::vector<int> owner(sample.roots.size(), -1);
    std::vector<int> claim(active.size(), -1);
    bool broke = false;

    for (std::size_t a = 0; a < active.size(); ++a)
    {
      const complex last = t.paths[active[a]].kappa.back();
      double best = std::numeric_limits<double>::infinity();
      double second = best;
      int best_idx = -1;
      for (std::size_t r = 0; r < sample.roots.size(); ++r)
      {
        const double d = std::abs(sample.roots[r] - last);
        if (d < best)
        {
          second = best;
          best = d;
          best_idx = static_cast<int>(r);
        }
        else if (d < second)
        {
          second = d;
        }
      }
      if (best_idx < 0 || best > threshold || second < 2.0 * best)
      {
        broke = true;
        continue;
      }
      if (owner[best_idx] >= 0)
      {
        // Two paths want the same root: neither continues.
        claim[owner[best_idx]] = -1;
        owner[best_idx] = -2;
        broke = true;
        continue;
      }
      if (owner[best_idx] == -2)
      {
        broke = true;
        continue;
      }
      owner[best_idx] = static_cast<int>(a);
      claim[a] = best_idx;
    }

    std::vector<std::size_t> next;
    for (std::size_t a = 0; a < active.size(); ++a)
    {
      if (claim[a] >= 0)
      {
        t.paths[active[a]].kappa.push_back(sample.roots[claim[a]]);
        next.push_back(active[a]);
      }
    }
    for (std::size_t r = 0; r < sample.roots.size(); ++r)
    {
      if (owner[r] >= 0)
      {
        continue;
      }
      if (i > 0)
      {
        broke = true;
      }
      t.paths.push_back({i, {sample.roots[r]}});
      next.push_back(t.paths.size() - 1);
    }
    if (broke)
    {
      t.breaks.push_back(i);
    }
    active = std::move(next);
  }
  return t;
}

std::string trajectory_to_csv(const Trajectory &t)
{
  std::ostringstream out;
  out << "path,sample,beta_re,beta_im,kappa_re,kappa_im\n";
  for (std::size_t p = 0; p < t.paths.size(); ++p)
  {
    const TrajectoryPath &path = t.paths[p];
    for (std::size_t k = 0; k < path.kappa.size(); ++k)
    {
      const int sample = path.first_sample + static_cast<int>(k);
      const complex beta = t.beta_samples[sample];
      out << p << ',' << sample << ',' << format_double(beta.real()) << ','
          << format_double(beta.imag()) << ',' << format_double(path.kappa[k].real()) << ','
          << format_double(path.kappa[k].imag()) << "\n";
    }
  }
  return out.str();
}

nlohmann::json to_json(const Trajectory &t)
{
  using json = nlohmann::json;
  json betas = json::array();
  for (const auto &b : t.beta_samples)
  {
    betas.push_back({b.real(), b.imag()});
  }
  json paths = json::array();
  for (const auto &p : t.paths)
  {
    json kappa = json::array();
    for (const auto &k : p.kappa)
    {
      kappa.push_back({k.real(), k.imag()});
    }
    paths.push_back({{"first_sample", p.first_sample}, {"kappa", std::move(kappa)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"beta_samples", std::move(betas)},
          {"paths", std::move(paths)},
          {"breaks", t.breaks},
          {"threshold", t.threshold},
          {"diagnostics", t.diagnostics}};
}

}  // namespace stargraph::cli
