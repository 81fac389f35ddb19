// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stargraph::cli
{

enum ExitCode : int
{
  exit_ok = 0,
  exit_failure = 1,
  exit_usage = 2,
};

class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Flat "key = value" lines; '#' starts a comment; blank lines ignored. Keys are the long
// flag names without the leading dashes. Throws UsageError on a malformed line.
std::map<std::string, std::string> parse_config(std::string_view text);
std::map<std::string, std::string> load_config_file(const std::string &path);

// Config path from --config on the command line, else $STARGRAPH_CONFIG, else none.
std::optional<std::string> config_path(int argc, const char *const *argv);

}  // namespace stargraph::cli
