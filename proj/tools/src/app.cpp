// SPDX-License-Identifier: Apache-2.0

#include "stargraph/cli/app.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "stargraph/cli/commands.hpp"
#include "stargraph/cli/config.hpp"
#include "stargraph/error.hpp"

namespace stargraph::cli
{

namespace
{

struct Common
{
  Settings settings;
  double beta_re = 0.0;
  double beta_im = 0.0;
  std::string out_path;
  std::string format = "json";
};

struct Args
{
  Common common;
  int count = 20;
  int m_min = 3;
  int m_max = 30;
  std::string method = "both";
  double beta_start = 0.5;
  double beta_start_im = 0.0;
  double beta_end = 5.0;
  double beta_end_im = 0.0;
  int steps = 100;
  int window = 5;
  double re_min = 0.0;
  double re_max = 0.0;
  double threshold = 0.39269908169872414;
  std::string svg_path;
  std::string suite = "all";
  std::string input;
  std::string overlay = "none";
};

void add_common(CLI::App *sub, Common &c)
{
  Settings &s = c.settings;
  sub->add_option("--q", s.q, "Number of edges")->capture_default_str();
  sub->add_option("--length", s.length, "Edge length L")->capture_default_str();
  sub->add_option("--alpha-re", s.alpha_re, "Real part of the coupling alpha")
      ->capture_default_str();
  sub->add_option("--alpha-im", s.alpha_im, "Imaginary part of alpha")->capture_default_str();
  sub->add_option("--beta", c.beta_re, "Real part of beta = alpha L; sets alpha = beta / L");
  sub->add_option("--beta-im", c.beta_im, "Imaginary part of beta (with --beta)");
  sub->add_option("--tol", s.tol, "Newton tolerance")->capture_default_str();
  sub->add_option("--im-bound", s.im_bound, "Half-height of rectangular search regions")
      ->capture_default_str();
  sub->add_option("--out", c.out_path, "Output file (default stdout)");
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--config", "Config file of 'key = value' lines");
  sub->add_option("--threads", s.threads, "Worker threads")->capture_default_str();
  sub->add_option("--seed", s.seed, "Seed for sampled checks")->capture_default_str();
}

// Config values fill options not given on the command line. Keys that belong to another
// subcommand are ignored; keys unknown to every subcommand are usage errors.
void apply_config(const std::vector<CLI::App *> &all, CLI::App *sub, const std::map<std::string, std::string> &cfg)
{
  for (const auto &[key, value] : cfg)
  {
    if (key == "config")
    {
      continue;
    }
    CLI::Option *opt = sub->get_option_no_throw("--" + key);
    if (!opt)
    {
      bool known = false;
      for (const CLI::App *other : all)
      {
        known = known || other->get_option_no_throw("--" + key) != nullptr;
      }
      if (!known)
      {
        throw UsageError("unknown config key '" + key + "'");
      }
      continue;
    }
    if (opt->count() > 0)
    {
      continue;
    }
    try
    {
      opt->add_result(value);
      opt->run_callback();
    }
    catch (const CLI::Error &e)
    {
      throw UsageError("config key '" + key + "': " + e.what());
    }
  }
}

void resolve_beta(CLI::App *sub, Common &c)
{
  const bool beta = sub->get_option("--beta")->count() > 0;
  const bool beta_im = sub->get_option("--beta-im")->count() > 0;
  if (!beta && !beta_im)
  {
    return;
  }
  if (sub->get_option("--alpha-re")->count() > 0 || sub->get_option("--alpha-im")->count() > 0)
  {
    throw UsageError("--beta cannot be combined with --alpha-re / --alpha-im");
  }
  if (!(c.settings.length > 0.0))
  {
    throw UsageError("--length must be positive");
  }
  c.settings.alpha_re = c.beta_re / c.settings.length;
  c.settings.alpha_im = c.beta_im / c.settings.length;
}

void emit(const std::string &text, const std::string &path, std::ostream &out)
{
  if (path.empty())
  {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file)
  {
    throw UsageError("cannot write '" + path + "'");
  }
  file << text;
}

std::string render(const RootReport &report, const std::string &format)
{
  return format == "csv" ? report_to_csv(report) : dump_report(report);
}

std::string read_file(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw UsageError("cannot read '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Spectra of PT-symmetric star graphs with Robin edge ends", "stargraph"};
  app.require_subcommand(1);
  Args a;
  Common &c = a.common;

  CLI::App *real = app.add_subcommand("real", "Beta-independent real roots kappa = n pi / 2");
  add_common(real, c);
  real->add_option("--count", a.count, "Number of roots")->capture_default_str();

  CLI::App *cplx = app.add_subcommand("complex", "Complex roots in windows M of the real axis");
  add_common(cplx, c);
  cplx->add_option("--m-min", a.m_min, "First window")->capture_default_str();
  cplx->add_option("--m-max", a.m_max, "Last window")->capture_default_str();
  cplx->add_option("--method", a.method, "contour, branch or both")
      ->check(CLI::IsMember({"contour", "branch", "both"}))
      ->capture_default_str();

  CLI::App *p0 = app.add_subcommand("special-p0", "The beta-dependent root for q = 2");
  add_common(p0, c);

  CLI::App *scan = app.add_subcommand("scan", "Track roots along a linear beta sweep");
  add_common(scan, c);
  scan->add_option("--beta-start", a.beta_start, "Sweep start (real part)")
      ->capture_default_str();
  scan->add_option("--beta-start-im", a.beta_start_im, "Sweep start (imaginary part)");
  scan->add_option("--beta-end", a.beta_end, "Sweep end (real part)")->capture_default_str();
  scan->add_option("--beta-end-im", a.beta_end_im, "Sweep end (imaginary part)");
  scan->add_option("--steps", a.steps, "Number of samples")->capture_default_str();
  scan->add_option("--window", a.window, "Window M to track")->capture_default_str();
  scan->add_option("--re-min", a.re_min, "Rectangle region instead of a window");
  scan->add_option("--re-max", a.re_max, "Rectangle region instead of a window");
  scan->add_option("--threshold", a.threshold, "Continuation distance threshold")
      ->capture_default_str();
  scan->add_option("--svg", a.svg_path, "Also write the trajectory plot here");

  CLI::App *verify = app.add_subcommand("verify", "Run an invariant suite");
  add_common(verify, c);
  verify->add_option("--suite", a.suite, "symmetry, oracle, asymptotics or all")
      ->check(CLI::IsMember({"symmetry", "oracle", "asymptotics", "all"}))
      ->capture_default_str();

  CLI::App *plot = app.add_subcommand("plot", "Render a JSON root report as SVG");
  add_common(plot, c);
  plot->add_option("--input", a.input, "Root report (JSON)")->required();
  plot->add_option("--overlay", a.overlay, "none or asymptotic_circles")
      ->check(CLI::IsMember({"none", "asymptotic_circles"}))
      ->capture_default_str();

  try
  {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i)
    {
      args.emplace_back(argv[i]);
    }
    app.parse(args);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try
  {
    CLI::App *sub = app.get_subcommands().front();
    if (const auto path = config_path(argc, argv))
    {
      apply_config({real, cplx, p0, scan, verify, plot}, sub, load_config_file(*path));
    }
    resolve_beta(sub, c);
    Settings &s = c.settings;
    if (s.threads < 1)
    {
      throw UsageError("--threads must be >= 1");
    }
    if (!(s.tol > 0.0) || !(s.im_bound > 0.0))
    {
      throw UsageError("--tol and --im-bound must be positive");
    }

    if (sub == real || sub == cplx || sub == p0)
    {
      CommandOutcome result;
      if (sub == real)
        result = cmd_real(s, a.count);
      else if (sub == cplx)
        result = cmd_complex(s, a.m_min, a.m_max, *parse_complex_method(a.method));
      else
        result = cmd_special_p0(s);
      emit(render(result.report, c.format), c.out_path, out);
      for (const auto &d : result.report.diagnostics)
      {
        err << "stargraph: " << d << "\n";
      }
      return result.passed ? exit_ok : exit_failure;
    }

    if (sub == scan)
    {
      ScanRegion region{a.window};
      if (scan->get_option("--re-min")->count() + scan->get_option("--re-max")->count() > 0)
      {
        if (!(a.re_min < a.re_max))
        {
          throw UsageError("need --re-min < --re-max");
        }
        region.shape = Rectangle{a.re_min, a.re_max, -s.im_bound, s.im_bound};
      }
      if (!(s.length > 0.0))
      {
        throw UsageError("--length must be positive");
      }
      const complex start = complex(a.beta_start, a.beta_start_im) / s.length;
      const complex end = complex(a.beta_end, a.beta_end_im) / s.length;
      const Trajectory t = cmd_scan(s, start, end, a.steps, region, a.threshold);
      const bool csv = scan->get_option("--format")->count() == 0 || c.format == "csv";
      emit(csv ? trajectory_to_csv(t) : to_json(t).dump(2) + "\n", c.out_path, out);
      if (!a.svg_path.empty())
      {
        emit(render_trajectory_svg(t), a.svg_path, out);
      }
      for (const auto &d : t.diagnostics)
      {
        err << "stargraph: " << d << "\n";
      }
      return exit_ok;
    }

    if (sub == verify)
    {
      if (c.format != "json")
      {
        throw UsageError("verify writes JSON only");
      }
      const VerifyOutcome result = cmd_verify(s, *parse_suite(a.suite));
      emit(result.report.dump(2) + "\n", c.out_path, out);
      return result.passed ? exit_ok : exit_failure;
    }

    // plot
    const RootReport report = parse_root_report(read_file(a.input));
    emit(render_report_svg(report, *parse_overlay(a.overlay)), c.out_path, out);
    return exit_ok;
  }
  catch (const UsageError &e)
  {
    err << "stargraph: " << e.what() << "\n";
    return exit_usage;
  }
  catch (const Error &e)
  {
    err << "stargraph: " << to_string(e.diagnostic()) << ": " << e.what() << "\n";
    switch (e.diagnostic())
    {
      case Diagnostic::invalid_edge_count:
      case Diagnostic::invalid_length:
      case Diagnostic::zero_coupling:
      case Diagnostic::invalid_argument:
      case Diagnostic::schema_error:
        return exit_usage;
      default:
        return exit_failure;
    }
  }
  catch (const std::exception &e)
  {
    err << "stargraph: " << e.what() << "\n";
    return exit_failure;
  }
}

}  // namespace stargraph::cli
