// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stargraph
{

// Machine-readable category attached to every failure raised by the library.
enum class Diagnostic
{
  invalid_edge_count,
  invalid_length,
  zero_coupling,
  invalid_argument,
  pole_adjacent,
  boundary_too_close,
  newton_nonconvergence,
  window_escape,
  resonant_denominator,
  degenerate_coincidence,
  iteration_nonconvergence,
  insufficient_samples,
  schema_error,
};

std::string_view to_string(Diagnostic d);

class Error : public std::runtime_error
{
public:
  Error(Diagnostic d, const std::string &what) : std::runtime_error(what), diag(d) {}

  Diagnostic diagnostic() const noexcept { return diag; }

private:
  Diagnostic diag;
};

}  // namespace stargraph
