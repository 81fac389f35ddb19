// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "stargraph/cli/app.hpp"

int main(int argc, char **argv)
{
  return stargraph::cli::run(argc, argv, std::cout, std::cerr);
}
