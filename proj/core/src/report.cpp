// SPDX-License-Identifier: Apache-2.0

#include "stargraph/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "stargraph/error.hpp"

namespace stargraph
{

namespace
{

using json = nlohmann::json;

json number_or_null(double v)
{
  return std::isfinite(v) ? json(v) : json(nullptr);
}

json optional_number(const std::optional<double> &v)
{
  return v ? number_or_null(*v) : json(nullptr);
}

[[noreturn]] void schema_fail(const std::string &what)
{
  throw Error(Diagnostic::schema_error, "invalid root report: " + what);
}

const json &require(const json &obj, const char *key)
{
  if (!obj.is_object() || !obj.contains(key))
  {
    schema_fail(std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

double read_number(const json &obj, const char *key)
{
  const json &v = require(obj, key);
  if (v.is_null())
  {
    return std::nan("");
  }
  if (!v.is_number())
  {
    schema_fail(std::string("field '") + key + "' is not a number");
  }
  return v.get<double>();
}

std::optional<double> read_optional_number(const json &obj, const char *key)
{
  if (!obj.contains(key) || obj.at(key).is_null())
  {
    return std::nullopt;
  }
  if (!obj.at(key).is_number())
  {
    schema_fail(std::string("field '") + key + "' is not a number");
  }
  return obj.at(key).get<double>();
}

std::optional<int> read_optional_int(const json &obj, const char *key)
{
  if (!obj.contains(key) || obj.at(key).is_null())
  {
    return std::nullopt;
  }
  if (!obj.at(key).is_number_integer())
  {
    schema_fail(std::string("field '") + key + "' is not an integer");
  }
  return obj.at(key).get<int>();
}

std::string csv_optional(const std::optional<double> &v)
{
  return v ? format_double(*v) : std::string();
}

std::string csv_optional(const std::optional<int> &v)
{
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

ReportModel report_model(const StarModel &model)
{
  return {model.q(), model.length(), model.alpha().real(), model.alpha().imag()};
}

ReportRoot report_root(const ComplexRoot &root)
{
  ReportRoot r;
  r.subset = Subset::complex;
  r.window = root.window;
  r.n = root.branch;
  r.kappa_re = root.kappa.real();
  r.kappa_im = root.kappa.imag();
  if (root.window)
  {
    r.epsilon_re = root.epsilon.real();
    r.epsilon_im = root.epsilon.imag();
  }
  r.residual_g = root.residual_g;
  r.residual_oracle = root.residual_oracle;
  r.method = to_string(root.method);
  return r;
}

ReportRoot report_real_root(int n, double kappa, double residual_oracle)
{
  ReportRoot r;
  r.subset = Subset::real;
  r.n = n;
  r.kappa_re = kappa;
  r.kappa_im = 0.0;
  r.residual_oracle = residual_oracle;
  r.method = "closed_form";
  return r;
}

void sort_roots(std::vector<ReportRoot> &roots)
{
  std::stable_sort(roots.begin(), roots.end(), [](const ReportRoot &a, const ReportRoot &b) {
    if (a.kappa_re != b.kappa_re)
      return a.kappa_re < b.kappa_re;
    return a.kappa_im < b.kappa_im;
  });
}

std::string format_double(double value)
{
  if (std::isnan(value))
  {
    return "nan";
  }
  if (std::isinf(value))
  {
    return value > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

json to_json(const RootReport &report)
{
  json roots = json::array();
  for (const auto &r : report.roots)
  {
    json j;
    j["subset"] = r.subset == Subset::real ? "real" : "complex";
    if (r.subset == Subset::complex)
    {
      j["M"] = r.window ? json(*r.window) : json(nullptr);
      j["epsilon_re"] = optional_number(r.epsilon_re);
      j["epsilon_im"] = optional_number(r.epsilon_im);
    }
    j["n"] = r.n ? json(*r.n) : json(nullptr);
    j["kappa_re"] = number_or_null(r.kappa_re);
    j["kappa_im"] = number_or_null(r.kappa_im);
    j["residual_g"] = optional_number(r.residual_g);
    j["residual_oracle"] = number_or_null(r.residual_oracle);
    j["method"] = r.method;
    roots.push_back(std::move(j));
  }
  json doc;
  doc["schema_version"] = report.schema_version;
  doc["model"] = {{"q", report.model.q},
                  {"L", report.model.length},
                  {"alpha_re", report.model.alpha_re},
                  {"alpha_im", report.model.alpha_im}};
  doc["roots"] = std::move(roots);
  doc["diagnostics"] = report.diagnostics;
  doc["settings"] = report.settings;
  return doc;
}

RootReport root_report_from_json(const json &doc)
{
  if (!doc.is_object())
  {
    schema_fail("document is not an object");
  }
  RootReport report;
  const json &version = require(doc, "schema_version");
  if (!version.is_string())
  {
    schema_fail("schema_version is not a string");
  }
  report.schema_version = version.get<std::string>();
  if (report.schema_version != kSchemaVersion)
  {
    schema_fail("unsupported schema_version '" + report.schema_version + "'");
  }

  const json &model = require(doc, "model");
  const json &q = require(model, "q");
  if (!q.is_number_integer())
  {
    schema_fail("model.q is not an integer");
  }
  report.model.q = q.get<int>();
  report.model.length = read_number(model, "L");
  report.model.alpha_re = read_number(model, "alpha_re");
  report.model.alpha_im = read_number(model, "alpha_im");

  const json &roots = require(doc, "roots");
  if (!roots.is_array())
  {
    schema_fail("roots is not an array");
  }
  for (const auto &j : roots)
  {
    ReportRoot r;
    const json &subset = require(j, "subset");
    if (subset == "real")
      r.subset = Subset::real;
    else if (subset == "complex")
      r.subset = Subset::complex;
    else
      schema_fail("unknown subset");
    r.window = read_optional_int(j, "M");
    r.n = read_optional_int(j, "n");
    r.kappa_re = read_number(j, "kappa_re");
    r.kappa_im = read_number(j, "kappa_im");
    r.epsilon_re = read_optional_number(j, "epsilon_re");
    r.epsilon_im = read_optional_number(j, "epsilon_im");
    r.residual_g = read_optional_number(j, "residual_g");
    r.residual_oracle = read_number(j, "residual_oracle");
    const json &method = require(j, "method");
    if (!method.is_string())
    {
      schema_fail("method is not a string");
    }
    r.method = method.get<std::string>();
    if (r.subset == Subset::complex && !r.residual_g)
    {
      schema_fail("complex root without residual_g");
    }
    report.roots.push_back(std::move(r));
  }

  if (doc.contains("diagnostics"))
  {
    const json &diag = doc.at("diagnostics");
    if (!diag.is_array())
    {
      schema_fail("diagnostics is not an array");
    }
    for (const auto &d : diag)
    {
      if (!d.is_string())
      {
        schema_fail("diagnostic entry is not a string");
      }
      report.diagnostics.push_back(d.get<std::string>());
    }
  }
  if (doc.contains("settings"))
  {
    report.settings = doc.at("settings");
  }
  return report;
}

RootReport parse_root_report(const std::string &text)
{
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded())
  {
    schema_fail("not valid JSON");
  }
  return root_report_from_json(doc);
}

std::string dump_report(const RootReport &report)
{
  return to_json(report).dump(2) + "\n";
}

std::string report_to_csv(const RootReport &report)
{
  std::ostringstream out;
  out << kCsvHeader << "\n";
  const double beta_re = report.model.alpha_re * report.model.length;
  const double beta_im = report.model.alpha_im * report.model.length;
  for (const auto &r : report.roots)
  {
    out << report.model.q << ',' << format_double(beta_re) << ',' << format_double(beta_im)
        << ',' << (r.subset == Subset::real ? "real" : "complex") << ','
        << csv_optional(r.window) << ',' << csv_optional(r.n) << ','
        << format_double(r.kappa_re) << ',' << format_double(r.kappa_im) << ','
        << csv_optional(r.residual_g) << ',' << format_double(r.residual_oracle) << ','
        << r.method << "\n";
  }
  return out.str();
}

json to_json(const OrderMeasurement &m)
{
  json samples = json::array();
  for (const auto &s : m.fit.samples)
  {
    samples.push_back({{"M", s.window}, {"relative_error", number_or_null(s.relative_error)}});
  }
  return {{"q", m.q},
          {"beta", {number_or_null(m.beta.real()), number_or_null(m.beta.imag())}},
          {"n", m.branch},
          {"order", to_string(m.order)},
          {"slope", number_or_null(m.fit.slope)},
          {"intercept", number_or_null(m.fit.intercept)},
          {"claimed_exponent", m.claimed_exponent},
          {"r2", number_or_null(m.fit.r_squared)},
          {"M_range", {m.m_min, m.m_max}},
          {"samples", std::move(samples)},
          {"warnings", m.fit.warnings}};
}

json to_json(const PermutationReport &r)
{
  json pairs = json::array();
  for (const auto &p : r.pairs)
  {
    pairs.push_back({{"M", p.window},
                     {"n_source", p.n_source},
                     {"n_matched", p.n_matched},
                     {"distance", number_or_null(p.distance)},
                     {"ambiguous", p.ambiguous}});
  }
  return {{"q", r.q},
          {"M_range", {r.m_min, r.m_max}},
          {"tolerance", r.tolerance},
          {"pairs", std::move(pairs)},
          {"max_distance", number_or_null(r.max_distance)},
          {"conclusion", to_string(r.conclusion)}};
}

}  // namespace stargraph
