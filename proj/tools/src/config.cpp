// SPDX-License-Identifier: Apache-2.0

#include "stargraph/cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace stargraph::cli
{

namespace
{

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
  {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::map<std::string, std::string> parse_config(std::string_view text)
{
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  while (!text.empty())
  {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
    {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty())
    {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
    {
      throw UsageError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.starts_with("--"))
    {
      key.erase(0, 2);
    }
    if (key.empty() || value.empty())
    {
      throw UsageError("config line " + std::to_string(line_no) + ": empty key or value");
    }
    out[key] = value;
  }
  return out;
}

std::map<std::string, std::string> load_config_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw UsageError("cannot read config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::optional<std::string> config_path(int argc, const char *const *argv)
{
  for (int i = 1; i < argc; ++i)
  {
    const std::string_view arg = argv[i];
    if (arg == "--config")
    {
      if (i + 1 >= argc)
      {
        throw UsageError("--config needs a path");
      }
      return std::string(argv[i + 1]);
    }
    if (arg.starts_with("--config="))
    {
      return std::string(arg.substr(9));
    }
  }
  if (const char *env = std::getenv("STARGRAPH_CONFIG"); env && *env)
  {
    return std::string(env);
  }
  return std::nullopt;
}

}  // namespace stargraph::cli
