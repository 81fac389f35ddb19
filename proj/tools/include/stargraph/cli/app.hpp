// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>

namespace stargraph::cli
{

// Parses argv and runs one subcommand. Results go to `out` unless --out is given;
// messages go to `err`. Returns an ExitCode.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace stargraph::cli
