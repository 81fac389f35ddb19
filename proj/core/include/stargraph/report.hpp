// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stargraph/asymptotics.hpp"
#include "stargraph/model.hpp"
#include "stargraph/rootfinder.hpp"
#include "stargraph/symmetry.hpp"

namespace stargraph
{

inline constexpr const char *kSchemaVersion = "1";

// Fixed CSV header of root tables.
inline constexpr const char *kCsvHeader =
    "q,beta_re,beta_im,subset,M,n,kappa_re,kappa_im,residual_g,residual_oracle,method";

enum class Subset
{
  real,
  complex,
};

struct ReportModel
{
  int q = 0;
  double length = 1.0;
  double alpha_re = 0.0;
  double alpha_im = 0.0;

  friend bool operator==(const ReportModel &, const ReportModel &) = default;
};

struct ReportRoot
{
  Subset subset = Subset::complex;
  std::optional<int> window;  // M, complex subset only
  std::optional<int> n;       // index n for the real subset, branch n for the complex one
  double kappa_re = 0.0;
  double kappa_im = 0.0;
  std::optional<double> epsilon_re;
  std::optional<double> epsilon_im;
  std::optional<double> residual_g;  // absent for the real subset
  double residual_oracle = 0.0;
  std::string method;

  friend bool operator==(const ReportRoot &, const ReportRoot &) = default;
};

struct RootReport
{
  std::string schema_version = kSchemaVersion;
  ReportModel model;
  std::vector<ReportRoot> roots;
  std::vector<std::string> diagnostics;
  nlohmann::json settings = nlohmann::json::object();

  friend bool operator==(const RootReport &, const RootReport &) = default;
};

ReportModel report_model(const StarModel &model);
ReportRoot report_root(const ComplexRoot &root);
ReportRoot report_real_root(int n, double kappa, double residual_oracle);

// Sort roots by (Re kappa, Im kappa).
void sort_roots(std::vector<ReportRoot> &roots);

nlohmann::json to_json(const RootReport &report);
// Throws Error(Diagnostic::schema_error) on a malformed document.
RootReport root_report_from_json(const nlohmann::json &doc);
RootReport parse_root_report(const std::string &text);

// Pretty-printed JSON with a trailing newline. Keys are emitted in a fixed order and
// doubles with a shortest round-trip encoding, so equal reports give equal bytes.
std::string dump_report(const RootReport &report);
std::string report_to_csv(const RootReport &report);

// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

nlohmann::json to_json(const OrderMeasurement &m);
nlohmann::json to_json(const PermutationReport &r);

}  // namespace stargraph
