// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "stargraph/cli/commands.hpp"

namespace stargraph::cli
{

namespace
{

constexpr double kPanel = 480.0;
constexpr double kMargin = 56.0;
constexpr double kDetail = 220.0;

struct Range
{
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v)
  {
    if (std::isfinite(v))
    {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }

  // Pads the range, falling back to [-1, 1] when empty and to a unit span when flat.
  void settle()
  {
    if (!(lo <= hi))
    {
      lo = -1.0;
      hi = 1.0;
      return;
    }
    double span = hi - lo;
    if (span <= 0.0)
    {
      span = std::max(1.0, std::abs(lo));
      lo -= 0.5 * span;
      hi += 0.5 * span;
      return;
    }
    lo -= 0.05 * span;
    hi += 0.05 * span;
  }
};

// Maps data coordinates into a square panel with origin (x0, y0) and side `size`.
struct Frame
{
  double x0, y0, size;
  Range x, y;

  double px(double v) const { return x0 + (v - x.lo) / (x.hi - x.lo) * size; }
  double py(double v) const { return y0 + size - (v - y.lo) / (y.hi - y.lo) * size; }
};

std::string num(double v)
{
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

void axes(std::ostringstream &svg, const Frame &f, const std::string &title)
{
  svg << "<g class=\"axes\">\n";
  svg << "<rect x=\"" << num(f.x0) << "\" y=\"" << num(f.y0) << "\" width=\"" << num(f.size)
      << "\" height=\"" << num(f.size) << "\" fill=\"none\" stroke=\"#333\"/>\n";
  if (f.y.lo < 0.0 && f.y.hi > 0.0)
  {
    svg << "<line x1=\"" << num(f.x0) << "\" y1=\"" << num(f.py(0.0)) << "\" x2=\""
        << num(f.x0 + f.size) << "\" y2=\"" << num(f.py(0.0))
        << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
  }
  svg << "<text class=\"axis-label\" x=\"" << num(f.x0 + f.size / 2) << "\" y=\""
      << num(f.y0 + f.size + 36) << "\" text-anchor=\"middle\">Re κ</text>\n";
  svg << "<text class=\"axis-label\" x=\"" << num(f.x0 - 40) << "\" y=\""
      << num(f.y0 + f.size / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 "
      << num(f.x0 - 40) << ' ' << num(f.y0 + f.size / 2) << ")\">Im κ</text>\n";
  svg << "<text x=\"" << num(f.x0) << "\" y=\"" << num(f.y0 + f.size + 16) << "\">"
      << num(f.x.lo) << "</text>\n";
  svg << "<text x=\"" << num(f.x0 + f.size) << "\" y=\"" << num(f.y0 + f.size + 16)
      << "\" text-anchor=\"end\">" << num(f.x.hi) << "</text>\n";
  svg << "<text x=\"" << num(f.x0 - 4) << "\" y=\"" << num(f.y0 + f.size)
      << "\" text-anchor=\"end\">" << num(f.y.lo) << "</text>\n";
  svg << "<text x=\"" << num(f.x0 - 4) << "\" y=\"" << num(f.y0 + 10)
      << "\" text-anchor=\"end\">" << num(f.y.hi) << "</text>\n";
  if (!title.empty())
  {
    svg << "<text x=\"" << num(f.x0) << "\" y=\"" << num(f.y0 - 8) << "\">" << title
        << "</text>\n";
  }
  svg << "</g>\n";
}

std::string header(double width, double height)
{
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height)
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return out.str();
}

}  // namespace

std::optional<Overlay> parse_overlay(const std::string &s)
{
  if (s == "none")
    return Overlay::none;
  if (s == "asymptotic_circles")
    return Overlay::asymptotic_circles;
  return std::nullopt;
}

double asymptotic_circle_radius(int q, complex beta, int M)
{
  const int p = q - 2;
  if (p < 1 || M < 0)
  {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double lambda = (M + 0.5) * std::numbers::pi;
  return std::pow(std::abs(beta) / lambda, 1.0 + 2.0 / p);
}

std::string render_report_svg(const RootReport &report, Overlay overlay)
{
  const complex beta =
      complex(report.model.alpha_re, report.model.alpha_im) * report.model.length;

  // Complex roots with a window get their own zoomed panel.
  std::map<int, std::vector<const ReportRoot *>> windows;
  Frame overview{kMargin, kMargin + 10, kPanel, {}, {}};
  for (const auto &r : report.roots)
  {
    overview.x.add(r.kappa_re);
    overview.y.add(r.kappa_im);
    if (r.subset == Subset::complex && r.window)
    {
      windows[*r.window].push_back(&r);
    }
  }
  overview.x.settle();
  overview.y.settle();

  const int columns = 4;
  const int rows = static_cast<int>((windows.size() + columns - 1) / columns);
  const double width = std::max(2 * kMargin + kPanel, columns * (kDetail + kMargin) + kMargin);
  const double height = kPanel + 2 * kMargin + 20 + rows * (kDetail + kMargin + 20);

  std::ostringstream svg;
  svg << header(width, height);
  svg << "<g class=\"overview\">\n";
  axes(svg, overview, "q = " + std::to_string(report.model.q) + ", " +
                          std::to_string(report.roots.size()) + " roots");
  for (const auto &r : report.roots)
  {
    svg << "<circle class=\"root\" cx=\"" << num(overview.px(r.kappa_re)) << "\" cy=\""
        << num(overview.py(r.kappa_im)) << "\" r=\"3\" fill=\""
        << (r.subset == Subset::real ? "#1f77b4" : "#d62728") << "\" data-kappa=\""
        << format_double(r.kappa_re) << ' ' << format_double(r.kappa_im) << "\"/>\n";
  }
  svg << "</g>\n";

  int index = 0;
  for (const auto &[M, roots] : windows)
  {
    const double center = (M + 0.5) * std::numbers::pi;
    const double radius = overlay == Overlay::asymptotic_circles
        ? asymptotic_circle_radius(report.model.q, beta, M)
        : std::numeric_limits<double>::quiet_NaN();

    // Panels are drawn in window offsets eps = kappa - center to keep the tiny scales.
    auto offset = [&](const ReportRoot *r) {
      return complex(r->epsilon_re.value_or(r->kappa_re - center),
                     r->epsilon_im.value_or(r->kappa_im));
    };
    double extent = std::isfinite(radius) ? radius : 0.0;
    for (const ReportRoot *r : roots)
    {
      const complex eps = offset(r);
      extent = std::max({extent, std::abs(eps.real()), std::abs(eps.imag())});
    }
    if (!(extent > 0.0))
    {
      extent = 1e-12;
    }
    extent *= 1.15;

    Frame f{kMargin + (index % columns) * (kDetail + kMargin),
            2 * kMargin + kPanel + 30 + (index / columns) * (kDetail + kMargin + 20),
            kDetail,
            {-extent, extent},
            {-extent, extent}};
    svg << "<g class=\"window\" data-window=\"" << M << "\">\n";
    axes(svg, f, "M = " + std::to_string(M) + ", offset from " + num(center));
    if (std::isfinite(radius))
    {
      const double scale = f.size / (2 * extent);
      svg << "<circle class=\"asymptotic-circle\" cx=\"" << num(f.px(0.0)) << "\" cy=\""
          << num(f.py(0.0)) << "\" r=\"" << num(radius * scale)
          << "\" fill=\"none\" stroke=\"#2ca02c\" stroke-dasharray=\"3 2\" data-window=\"" << M
          << "\" data-center=\"" << format_double(center) << "\" data-radius=\""
          << format_double(radius) << "\"/>\n";
    }
    for (const ReportRoot *r : roots)
    {
      const complex eps = offset(r);
      svg << "<circle class=\"root-detail\" cx=\"" << num(f.px(eps.real())) << "\" cy=\""
          << num(f.py(eps.imag())) << "\" r=\"3\" fill=\"#d62728\"/>\n";
    }
    svg << "</g>\n";
    ++index;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_trajectory_svg(const Trajectory &t)
{
  Frame f{kMargin, kMargin + 10, kPanel, {}, {}};
  for (const auto &p : t.paths)
  {
    for (const auto &k : p.kappa)
    {
      f.x.add(k.real());
      f.y.add(k.imag());
    }
  }
  f.x.settle();
  f.y.settle();

  std::ostringstream svg;
  svg << header(2 * kMargin + kPanel, 2 * kMargin + kPanel + 20);
  axes(svg, f, std::to_string(t.paths.size()) + " paths, " + std::to_string(t.breaks.size()) +
                   " breaks");
  for (std::size_t i = 0; i < t.paths.size(); ++i)
  {
    svg << "<polyline class=\"path\" data-path=\"" << i << "\" fill=\"none\" stroke=\"#d62728\" "
        << "points=\"";
    for (std::size_t k = 0; k < t.paths[i].kappa.size(); ++k)
    {
      const complex z = t.paths[i].kappa[k];
      svg << (k ? " " : "") << num(f.px(z.real())) << ',' << num(f.py(z.imag()));
    }
    svg << "\"/>\n";
    const complex start = t.paths[i].kappa.front();
    svg << "<circle class=\"path-start\" cx=\"" << num(f.px(start.real())) << "\" cy=\""
        << num(f.py(start.imag())) << "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace stargraph::cli
