// SPDX-License-Identifier: Apache-2.0

#include "stargraph/secular.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "stargraph/error.hpp"

namespace stargraph
{

namespace
{

using std::numbers::pi;

complex ipow(complex z, int n)
{
  complex result(1.0, 0.0);
  complex base = z;
  while (n > 0)
  {
    if (n & 1)
    {
      result *= base;
    }
    base *= base;
    n >>= 1;
  }
  return result;
}

void require_positive_p(const StarModel &model)
{
  if (model.p() < 1)
  {
    throw Error(Diagnostic::invalid_argument,
                "reduced secular function needs p = q - 2 >= 1 (q = 2 has a single "
                "dynamics-dependent root, see special_p0_root)");
  }
}

// G and G' from precomputed sin(lambda), cos(lambda).
ReducedEval reduced_from_trig(const StarModel &model, complex lambda, complex s, complex c)
{
  const int p = model.p();
  const int q = model.q();
  const complex coupling = ipow(complex(0.0, 1.0) * model.beta(), q);
  const complex s_pm1 = ipow(s, p - 1);
  const complex c_pm1 = ipow(c, p - 1);
  const complex s_p = s_pm1 * s;
  const complex c_p = c_pm1 * c;
  const complex lam_qm1 = ipow(lambda, q - 1);
  const complex lam_q = lam_qm1 * lambda;

  ReducedEval out;
  out.value = coupling * s_p + lam_q * c_p;
  out.derivative = static_cast<double>(p) * coupling * s_pm1 * c +
                   static_cast<double>(q) * lam_qm1 * c_p -
                   static_cast<double>(p) * lam_q * c_pm1 * s;
  out.scale = std::abs(coupling) * std::abs(s_p) + std::abs(lam_q) * std::abs(c_p);
  return out;
}

}  // namespace

double window_center(int window)
{
  return (window + 0.5) * pi;
}

complex eval_reduced(const StarModel &model, complex lambda)
{
  return eval_reduced_full(model, lambda).value;
}

complex eval_reduced_derivative(const StarModel &model, complex lambda)
{
  return eval_reduced_full(model, lambda).derivative;
}

ReducedEval eval_reduced_full(const StarModel &model, complex lambda)
{
  require_positive_p(model);
  return reduced_from_trig(model, lambda, std::sin(lambda), std::cos(lambda));
}

ReducedEval eval_reduced_window(const StarModel &model, int window, complex eps)
{
  require_positive_p(model);
  const double sign = (std::abs(window) % 2 == 0) ? 1.0 : -1.0;
  const complex s = sign * std::cos(eps);
  const complex c = -sign * std::sin(eps);
  return reduced_from_trig(model, window_center(window) + eps, s, c);
}

ScaledValue eval_reduced_scaled(const StarModel &model, complex lambda)
{
  require_positive_p(model);
  const double y = lambda.imag();
  if (std::abs(y) <= 20.0)
  {
    const ReducedEval e = eval_reduced_full(model, lambda);
    return {e.value, e.derivative, 0.0};
  }
  // sin, cos with exp(|y|) divided out.
  const double x = lambda.real();
  const double ay = std::abs(y);
  const complex up = std::polar(std::exp(-y - ay), x);     // e^{i lambda} e^{-|y|}
  const complex down = std::polar(std::exp(y - ay), -x);   // e^{-i lambda} e^{-|y|}
  const complex s = (up - down) / complex(0.0, 2.0);
  const complex c = (up + down) / 2.0;
  // G and G' are homogeneous of degree p in (sin, cos).
  const ReducedEval e = reduced_from_trig(model, lambda, s, c);
  return {e.value, e.derivative, model.p() * ay};
}

complex eval_quotient(const StarModel &model, complex kappa)
{
  const double nearest = std::round(kappa.real() / pi - 0.5);
  const double pole = (nearest + 0.5) * pi;
  if (std::abs(kappa - complex(pole, 0.0)) < 1e-9)
  {
    throw Error(Diagnostic::pole_adjacent,
                "pole-adjacent evaluation: kappa is within 1e-9 of a pole of tan");
  }
  const int p = model.p();
  const int q = model.q();
  const complex t = std::tan(kappa);
  const complex coupling = ipow(complex(0.0, 1.0) * model.beta(), q);
  const complex kq = ipow(kappa, q);
  const complex numerator = kq + coupling * ipow(t, p);
  const complex denominator = kq - coupling * ipow(t, q);
  return numerator / denominator * t;
}

std::vector<double> BoundarySystem::singular_values() const
{
  Eigen::MatrixXcd m(rows, rows);
  for (int r = 0; r < rows; ++r)
  {
    for (int c = 0; c < rows; ++c)
    {
      m(r, c) = at(r, c);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto &sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

BoundarySystem boundary_matrix(const StarModel &model, complex k, int edge_shift)
{
  const int q = model.q();
  const int n = 2 * q;
  const complex kl = k * model.length();
  const complex s = std::sin(kl);
  const complex c = std::cos(kl);
  const complex i_alpha = complex(0.0, 1.0) * model.alpha();

  BoundarySystem sys{model, k, n, std::vector<complex>(static_cast<std::size_t>(n * n))};
  auto set = [&](int row, int col, complex v) {
    sys.entries[static_cast<std::size_t>(row * n + col)] += v;
  };

  for (int j = 0; j < q; ++j)
  {
    set(j, j, i_alpha * std::polar(1.0, (j + edge_shift) * model.phi()));
    set(j, q + j, k);
  }
  for (int j = 1; j < q; ++j)
  {
    const int row = q - 1 + j;
    set(row, j, c);
    set(row, q + j, s);
    set(row, 0, -c);
    set(row, q, -s);
  }
  for (int j = 0; j < q; ++j)
  {
    set(n - 1, j, -k * s);
    set(n - 1, q + j, k * c);
  }
  return sys;
}

double oracle_residual(const StarModel &model, complex kappa, int edge_shift)
{
  const auto sv = boundary_matrix(model, kappa / model.length(), edge_shift).singular_values();
  if (sv.empty() || !(sv.front() > 0.0))
  {
    return 0.0;
  }
  return sv.back() / sv.front();
}

}  // namespace stargraph
