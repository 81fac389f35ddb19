// SPDX-License-Identifier: Apache-2.0

#include "stargraph/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "stargraph/asymptotics.hpp"
#include "stargraph/error.hpp"
#include "stargraph/parallel.hpp"
#include "stargraph/secular.hpp"
#include "stargraph/symmetry.hpp"

namespace stargraph::cli
{

namespace
{

using json = nlohmann::json;
using std::numbers::pi;

constexpr const char *kOriginNote =
    "kappa = 0 (order-p zero of the reduced secular function) is excluded from reports";

std::string describe(const ComplexRoot &r)
{
  std::ostringstream out;
  out.precision(17);
  out << "kappa = (" << r.kappa.real() << ", " << r.kappa.imag() << ")";
  if (r.window)
  {
    out << " M = " << *r.window;
  }
  if (r.branch)
  {
    out << " n = " << *r.branch;
  }
  return out.str();
}

// Appends a diagnostic for every residual bound the root misses.
bool certify(const ComplexRoot &r, std::vector<std::string> &diagnostics)
{
  bool ok = true;
  if (!(r.residual_g < kMaxResidualG))
  {
    std::ostringstream msg;
    msg << "residual_g " << r.residual_g << " above " << kMaxResidualG << " at " << describe(r);
    diagnostics.push_back(msg.str());
    ok = false;
  }
  if (!(r.residual_oracle < kMaxOracleResidual))
  {
    std::ostringstream msg;
    msg << "oracle residual " << r.residual_oracle << " above " << kMaxOracleResidual
        << " at " << describe(r);
    diagnostics.push_back(msg.str());
    ok = false;
  }
  return ok;
}

RootReport base_report(const Settings &s, const StarModel &model, const std::string &command)
{
  RootReport report;
  report.model = report_model(model);
  report.settings = s.to_json();
  report.settings["command"] = command;
  return report;
}

void require_asymptotic_machinery(const StarModel &model)
{
  if (model.p() < 1)
  {
    throw UsageError(
        "q = 2: the asymptotic machinery needs p = q - 2 >= 1; use the special-p0 "
        "subcommand for the single dynamics-dependent root");
  }
}

json check(const std::string &name, bool passed, json detail)
{
  return {{"name", name}, {"passed", passed}, {"detail", std::move(detail)}};
}

}  // namespace

StarModel Settings::model() const
{
  try
  {
    return make_model(q, length, complex(alpha_re, alpha_im));
  }
  catch (const Error &e)
  {
    throw UsageError(e.what());
  }
}

json Settings::to_json() const
{
  return {{"q", q},         {"L", length}, {"alpha_re", alpha_re}, {"alpha_im", alpha_im},
          {"tol", tol},     {"im_bound", im_bound}, {"seed", seed}};
}

std::optional<ComplexMethod> parse_complex_method(const std::string &s)
{
  if (s == "contour")
    return ComplexMethod::contour;
  if (s == "branch")
    return ComplexMethod::branch;
  if (s == "both")
    return ComplexMethod::both;
  return std::nullopt;
}

std::string to_string(ComplexMethod m)
{
  switch (m)
  {
    case ComplexMethod::contour:
      return "contour";
    case ComplexMethod::branch:
      return "branch";
    case ComplexMethod::both:
      return "both";
  }
  return "unknown";
}

CommandOutcome cmd_real(const Settings &s, int count)
{
  if (count < 1)
  {
    throw UsageError("--count must be >= 1");
  }
  const StarModel model = s.model();
  CommandOutcome out{base_report(s, model, "real")};
  out.report.settings["count"] = count;

  const auto points = real_roots(model, count);
  std::vector<double> residuals(points.size());
  parallel_for(points.size(), s.threads, [&](std::size_t i) {
    residuals[i] = oracle_residual(model, points[i].kappa);
  });
  for (std::size_t i = 0; i < points.size(); ++i)
  {
    const int n = static_cast<int>(i) + 1;
    out.report.roots.push_back(report_real_root(n, points[i].kappa.real(), residuals[i]));
    if (!(residuals[i] < kMaxOracleResidual))
    {
      std::ostringstream msg;
      msg << "oracle residual " << residuals[i] << " above " << kMaxOracleResidual
          << " at n = " << n;
      out.report.diagnostics.push_back(msg.str());
      out.passed = false;
    }
  }
  sort_roots(out.report.roots);
  return out;
}

CommandOutcome cmd_complex(const Settings &s, int m_min, int m_max, ComplexMethod method)
{
  const StarModel model = s.model();
  require_asymptotic_machinery(model);
  if (m_min < 0 || m_max < m_min)
  {
    throw UsageError("need 0 <= --m-min <= --m-max");
  }
  CommandOutcome out{base_report(s, model, "complex")};
  out.report.settings["m_min"] = m_min;
  out.report.settings["m_max"] = m_max;
  out.report.settings["method"] = to_string(method);

  const int p = model.p();
  const std::size_t windows = static_cast<std::size_t>(m_max - m_min + 1);

  struct WindowResult
  {
    std::vector<ComplexRoot> contour;
    std::vector<ComplexRoot> branch;
    std::vector<std::string> diagnostics;
    bool passed = true;
  };
  std::vector<WindowResult> results(windows);

  parallel_for(windows, s.threads, [&](std::size_t w) {
    const int M = m_min + static_cast<int>(w);
    WindowResult &res = results[w];
    if (method != ComplexMethod::branch)
    {
      SearchOptions opts;
      opts.tol = s.tol;
      RegionSearch search = find_roots_in_region(model, ContourRegion::window(M), opts);
      for (auto &d : search.diagnostics)
      {
        res.diagnostics.push_back("M = " + std::to_string(M) + ": " + d);
      }
      if (!search.complete())
      {
        res.passed = false;
      }
      res.contour = std::move(search.roots);
    }
    if (method != ComplexMethod::contour)
    {
      for (int n = 0; n < p; ++n)
      {
        try
        {
          res.branch.push_back(solve_branch(model, M, n, s.tol));
        }
        catch (const Error &e)
        {
          res.diagnostics.push_back("M = " + std::to_string(M) + ", n = " + std::to_string(n) +
                                    ": " + e.what());
          res.passed = false;
        }
      }
    }
    if (method == ComplexMethod::both)
    {
      if (res.contour.size() != res.branch.size())
      {
        res.diagnostics.push_back("discrepancy at M = " + std::to_string(M) + ": contour found " +
                                  std::to_string(res.contour.size()) + " roots, branch solves " +
                                  std::to_string(res.branch.size()));
        res.passed = false;
      }
      for (const auto &b : res.branch)
      {
        double best = std::numeric_limits<double>::infinity();
        for (const auto &c : res.contour)
        {
          best = std::min(best, std::abs(c.kappa - b.kappa));
        }
        if (!(best < kMethodMatchTolerance))
        {
          std::ostringstream msg;
          msg << "discrepancy at M = " << M << ", n = " << b.branch.value_or(-1)
              << ": nearest contour root at distance " << best;
          res.diagnostics.push_back(msg.str());
          res.passed = false;
        }
      }
    }
  });

  std::vector<ComplexRoot> roots;
  for (auto &res : results)
  {
    auto &chosen = method == ComplexMethod::contour ? res.contour : res.branch;
    for (const auto &r : chosen)
    {
      if (!certify(r, res.diagnostics))
      {
        res.passed = false;
      }
      if (r.ambiguous_branch)
      {
        res.diagnostics.push_back("ambiguous branch label at " + describe(r));
      }
      if (r.possible_multiple)
      {
        res.diagnostics.push_back("possible multiple root at " + describe(r));
      }
      roots.push_back(r);
    }
    out.report.diagnostics.insert(out.report.diagnostics.end(), res.diagnostics.begin(),
                                  res.diagnostics.end());
    out.passed = out.passed && res.passed;
  }
  if (method == ComplexMethod::both && out.passed)
  {
    out.report.diagnostics.push_back("contour and branch root sets matched to " +
                                     format_double(kMethodMatchTolerance));
  }
  out.report.diagnostics.push_back(kOriginNote);

  for (const auto &r : roots)
  {
    out.report.roots.push_back(report_root(r));
  }
  sort_roots(out.report.roots);
  return out;
}

CommandOutcome cmd_special_p0(const Settings &s)
{
  const StarModel model = s.model();
  if (model.q() != 2)
  {
    throw UsageError("special-p0 applies to q = 2 only");
  }
  CommandOutcome out{base_report(s, model, "special-p0")};
  ComplexRoot root;
  try
  {
    root = special_p0_root(model);
  }
  catch (const Error &e)
  {
    if (e.diagnostic() == Diagnostic::invalid_argument)
    {
      throw UsageError(e.what());
    }
    out.report.diagnostics.push_back(e.what());
    out.passed = false;
    return out;
  }
  out.passed = certify(root, out.report.diagnostics);
  out.report.roots.push_back(report_root(root));
  return out;
}

std::optional<Suite> parse_suite(const std::string &s)
{
  if (s == "symmetry")
    return Suite::symmetry;
  if (s == "oracle")
    return Suite::oracle;
  if (s == "asymptotics")
    return Suite::asymptotics;
  if (s == "all")
    return Suite::all;
  return std::nullopt;
}

std::string to_string(Suite s)
{
  switch (s)
  {
    case Suite::symmetry:
      return "symmetry";
    case Suite::oracle:
      return "oracle";
    case Suite::asymptotics:
      return "asymptotics";
    case Suite::all:
      return "all";
  }
  return "unknown";
}

namespace
{

void run_symmetry(const Settings &s, const StarModel &model, json &checks)
{
  require_asymptotic_machinery(model);
  const InvarianceReport g = verify_g_invariance(model, 1000, s.seed);
  checks.push_back(check("g_invariance", g.passed(),
                         {{"samples", g.samples},
                          {"max_relative_deviation", g.max_relative_deviation},
                          {"violations", g.violations.size()}}));

  const BranchShiftReport shift = verify_branch_equation_shift(model, 1000, s.seed);
  checks.push_back(check("branch_equation_shift", shift.passed(),
                         {{"samples", shift.samples},
                          {"compared", shift.compared},
                          {"on_branch_cut", shift.on_branch_cut},
                          {"max_relative_deviation", shift.max_relative_deviation},
                          {"violations", shift.violations.size()}}));

  const PermutationReport perm = match_rotated_roots(model, 3, 20, 1e-9, s.threads);
  checks.push_back(check("rotated_root_matching",
                         perm.conclusion == PermutationConclusion::cyclic_shift_confirmed,
                         stargraph::to_json(perm)));
}

void run_oracle(const Settings &s, const StarModel &model, json &checks)
{
  const auto real = real_roots(model, 20);
  std::vector<double> residuals(real.size());
  parallel_for(real.size(), s.threads,
               [&](std::size_t i) { residuals[i] = oracle_residual(model, real[i].kappa); });
  const double worst_real = *std::max_element(residuals.begin(), residuals.end());
  checks.push_back(check("real_subset_certified", worst_real < 1e-9,
                         {{"count", real.size()}, {"max_residual_oracle", worst_real}}));

  if (model.p() < 1)
  {
    ComplexRoot root = special_p0_root(model);
    checks.push_back(check("special_p0_certified", root.residual_oracle < 1e-10,
                           {{"kappa", root.kappa.real()},
                            {"residual_oracle", root.residual_oracle}}));
    return;
  }

  const int m_min = 3, m_max = 30;
  const std::size_t windows = static_cast<std::size_t>(m_max - m_min + 1);
  std::vector<std::vector<ComplexRoot>> roots(windows);
  parallel_for(windows, s.threads, [&](std::size_t w) {
    for (int n = 0; n < model.p(); ++n)
    {
      roots[w].push_back(solve_branch(model, m_min + static_cast<int>(w), n, s.tol));
    }
  });
  double worst_oracle = 0.0, worst_g = 0.0;
  std::size_t count = 0;
  for (const auto &window : roots)
  {
    for (const auto &r : window)
    {
      worst_oracle = std::max(worst_oracle, r.residual_oracle);
      worst_g = std::max(worst_g, r.residual_g);
      ++count;
    }
  }
  checks.push_back(check("complex_subset_certified",
                         worst_oracle < kMaxOracleResidual && worst_g < kMaxResidualG,
                         {{"count", count},
                          {"M_range", {m_min, m_max}},
                          {"max_residual_oracle", worst_oracle},
                          {"max_residual_g", worst_g}}));
}

void run_asymptotics(const Settings &s, const StarModel &model, json &checks)
{
  require_asymptotic_machinery(model);
  const OrderMeasurement first =
      measure_error_order(model, 0, 10, 200, EstimateOrder::first, s.threads);
  const bool steep_p1 = model.p() == 1;
  const OrderMeasurement second = steep_p1
      ? measure_error_order(model, 0, 2, 8, EstimateOrder::second, s.threads)
      : measure_error_order(model, 0, 10, 100, EstimateOrder::second, s.threads);

  checks.push_back(check("first_order_rate",
                         first.fit.slope <= first.claimed_exponent && first.fit.r_squared > 0.99,
                         stargraph::to_json(first)));
  checks.push_back(check("second_order_rate", second.fit.slope <= second.claimed_exponent,
                         stargraph::to_json(second)));
  checks.push_back(check("second_order_gain",
                         second.fit.slope <= first.fit.slope - 1.0,
                         {{"first_slope", first.fit.slope},
                          {"second_slope", second.fit.slope},
                          {"required_gain", 1.0},
                          {"measured_gain", first.fit.slope - second.fit.slope}}));
}

}  // namespace

VerifyOutcome cmd_verify(const Settings &s, Suite suite)
{
  const StarModel model = s.model();
  json checks = json::array();
  if (suite == Suite::symmetry || suite == Suite::all)
  {
    if (model.p() >= 1 || suite == Suite::symmetry)
      run_symmetry(s, model, checks);
  }
  if (suite == Suite::oracle || suite == Suite::all)
  {
    run_oracle(s, model, checks);
  }
  if (suite == Suite::asymptotics || suite == Suite::all)
  {
    if (model.p() >= 1 || suite == Suite::asymptotics)
      run_asymptotics(s, model, checks);
  }

  VerifyOutcome out;
  for (const auto &c : checks)
  {
    out.passed = out.passed && c.at("passed").get<bool>();
  }
  out.report = {{"schema_version", kSchemaVersion},
                {"suite", to_string(suite)},
                {"model", {{"q", model.q()},
                           {"L", model.length()},
                           {"alpha_re", model.alpha().real()},
                           {"alpha_im", model.alpha().imag()}}},
                {"settings", s.to_json()},
                {"checks", std::move(checks)},
                {"passed", out.passed}};
  return out;
}

}  // namespace stargraph::cli
