// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "stargraph/cli/config.hpp"
#include "stargraph/model.hpp"
#include "stargraph/report.hpp"
#include "stargraph/rootfinder.hpp"

namespace stargraph::cli
{

// Effective configuration shared by all subcommands.
struct Settings
{
  int q = 3;
  double length = 1.0;
  double alpha_re = 1.0;
  double alpha_im = 0.0;
  double tol = 1e-13;
  double im_bound = 10.0;
  int threads = 1;
  std::uint64_t seed = 5489;

  // Throws UsageError for invalid model parameters.
  StarModel model() const;
  // Recorded in reports. Thread count is excluded: it never changes results.
  nlohmann::json to_json() const;
};

// Residual bounds a reported root must meet.
inline constexpr double kMaxResidualG = 1e-10;
inline constexpr double kMaxOracleResidual = 1e-8;
inline constexpr double kMethodMatchTolerance = 1e-9;

struct CommandOutcome
{
  RootReport report;
  bool passed = true;
};

CommandOutcome cmd_real(const Settings &s, int count);

enum class ComplexMethod
{
  contour,
  branch,
  both,
};

std::optional<ComplexMethod> parse_complex_method(const std::string &s);
std::string to_string(ComplexMethod m);

CommandOutcome cmd_complex(const Settings &s, int m_min, int m_max, ComplexMethod method);

CommandOutcome cmd_special_p0(const Settings &s);

// ---------------------------------------------------------------------------------------
// beta sweeps

struct ScanRegion
{
  // Window index M (disc of radius pi/4 about (2M+1) pi/2) or an explicit rectangle.
  std::variant<int, Rectangle> shape;
};

struct TrajectoryPath
{
  int first_sample = 0;
  std::vector<complex> kappa;  // kappa[i] belongs to sample first_sample + i
};

struct Trajectory
{
  std::vector<complex> beta_samples;
  std::vector<TrajectoryPath> paths;
  std::vector<int> breaks;  // sample indices where continuation was ambiguous or broke
  double threshold = 0.0;
  std::vector<std::string> diagnostics;
};

// Sweeps alpha linearly from alpha_start to alpha_end (beta = alpha L), solving the roots
// in `region` at each sample and linking them by nearest continuation. A link is refused
// when the nearest candidate is farther than `threshold` or the runner-up is within a
// factor 2 of it.
Trajectory cmd_scan(const Settings &s, complex alpha_start, complex alpha_end, int steps,
                    const ScanRegion &region, double threshold = 0.39269908169872414);

std::string trajectory_to_csv(const Trajectory &t);
nlohmann::json to_json(const Trajectory &t);

// ---------------------------------------------------------------------------------------
// verification suites

enum class Suite
{
  symmetry,
  oracle,
  asymptotics,
  all,
};

std::optional<Suite> parse_suite(const std::string &s);
std::string to_string(Suite s);

struct VerifyOutcome
{
  nlohmann::json report;
  bool passed = true;
};

VerifyOutcome cmd_verify(const Settings &s, Suite suite);

// ---------------------------------------------------------------------------------------
// plots

enum class Overlay
{
  none,
  asymptotic_circles,
};

std::optional<Overlay> parse_overlay(const std::string &s);

// Radius |beta / ((M+1/2) pi)|^(1+2/p) of the leading-order root circle of window M.
double asymptotic_circle_radius(int q, complex beta, int M);

std::string render_report_svg(const RootReport &report, Overlay overlay);
std::string render_trajectory_svg(const Trajectory &t);

}  // namespace stargraph::cli
