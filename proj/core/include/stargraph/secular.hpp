// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include "stargraph/model.hpp"

namespace stargraph
{

// Secular functions of the star model.
//
// The beta-dependent part of the spectrum is the zero set (minus the origin) of the
// entire function
//
//   G(lambda) = (i beta)^(p+2) sin^p(lambda) + lambda^(p+2) cos^p(lambda),
//
// i.e. the reduced secular equation tan^p(lambda) = -(lambda / (i beta))^(p+2) multiplied
// through by cos^p(lambda). G never vanishes where cos(lambda) = 0, so the multiplication
// adds no zeros. Only integer powers appear here.

// G(lambda). Requires p >= 1.
complex eval_reduced(const StarModel &model, complex lambda);

// dG/dlambda. Requires p >= 1.
complex eval_reduced_derivative(const StarModel &model, complex lambda);

// G(lambda) = value * exp(log_scale). For |Im lambda| > 20 the trigonometric factors are
// evaluated with exp(|Im lambda|) factored out so the mantissa stays finite; zeros and
// phase are unchanged by the positive rescaling. `derivative` carries the same factor.
struct ScaledValue
{
  complex value;
  complex derivative;
  double log_scale = 0.0;
};

ScaledValue eval_reduced_scaled(const StarModel &model, complex lambda);

// G and G' together with the magnitude sum |(i beta)^q sin^p| + |lambda^q cos^p| used to
// make residuals scale-free.
struct ReducedEval
{
  complex value;
  complex derivative;
  double scale = 0.0;
};

ReducedEval eval_reduced_full(const StarModel &model, complex lambda);

// Same quantities at lambda = (M + 1/2) pi + eps, evaluated through
// sin(lambda) = (-1)^M cos(eps) and cos(lambda) = (-1)^(M+1) sin(eps), which keeps full
// relative precision in eps for roots hugging the window center. The derivative is with
// respect to eps (equal to dG/dlambda).
ReducedEval eval_reduced_window(const StarModel &model, int window, complex eps);

// (M + 1/2) pi.
double window_center(int window);

// Left-hand side of the full secular equation,
//   [kappa^q + (i beta)^q tan^p kappa] / [kappa^q - (i beta)^q tan^q kappa] * tan kappa.
// Throws Diagnostic::pole_adjacent within 1e-9 of an odd multiple of pi/2.
complex eval_quotient(const StarModel &model, complex kappa);

// Dense boundary-condition system for edge waves psi_j(y) = A_j cos(k y) + B_j sin(k y),
// unknowns ordered (A_0..A_{q-1}, B_0..B_{q-1}). Rows:
//   0..q-1     Robin     k B_j + i alpha e^{i (j + edge_shift) phi} A_j = 0
//   q..2q-2    continuity psi_j(L) - psi_0(L) = 0, j = 1..q-1
//   2q-1       Kirchhoff  sum_j k (-A_j sin kL + B_j cos kL) = 0
// The Robin derivative is taken along the outward coordinate at the free end (y grows
// towards the vertex, so d/dx = -d/dy); with this orientation the singular set of the
// matrix is exactly the root set of the secular equation for every q. edge_shift
// relabels the edges cyclically and is used to check the parity action.
struct BoundarySystem
{
  StarModel model;
  complex k;
  int rows = 0;
  // Row-major 2q x 2q entries.
  std::vector<complex> entries;

  complex at(int row, int col) const
  {
    return entries[static_cast<std::size_t>(row * rows + col)];
  }
  std::vector<double> singular_values() const;  // descending
};

BoundarySystem boundary_matrix(const StarModel &model, complex k, int edge_shift = 0);

// sigma_min / sigma_max of boundary_matrix(model, kappa / L). Below 1e-8 certifies a root.
double oracle_residual(const StarModel &model, complex kappa, int edge_shift = 0);

}  // namespace stargraph
