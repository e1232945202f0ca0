#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <ios>
#include <istream>
#include <stdexcept>

namespace slrlab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

}  // namespace

ConfigEntries parse_config(std::istream& in) {
  ConfigEntries entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
    const bool duplicate = std::any_of(entries.begin(), entries.end(),
                                       [&](const auto& e) { return e.first == key; });
    if (duplicate) throw std::invalid_argument("config: duplicate key '" + key + "'");
    std::vector<std::string> values;
    if (!value.empty() && value.front() == '[') {
      if (value.back() != ']') {
        throw std::invalid_argument("config line " + std::to_string(line_no) + ": unterminated array");
      }
      const std::string body = value.substr(1, value.size() - 2);
      std::size_t start = 0;
      while (start <= body.size()) {
        const auto comma = body.find(',', start);
        const std::string item = trim(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!item.empty()) values.push_back(unquote(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    } else {
      values.push_back(unquote(value));
    }
    entries.emplace_back(key, std::move(values));
  }
  return entries;
}

ConfigEntries parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read config file '" + path + "'");
  return parse_config(in);
}

std::vector<std::string> config_to_args(const ConfigEntries& config) {
  std::vector<std::string> args;
  std::string command;
  for (const auto& [key, values] : config) {
    if (key == "command") {
      if (values.size() != 1) throw std::invalid_argument("config: 'command' takes one value");
      command = values.front();
    }
  }
  if (command.empty()) throw std::invalid_argument("config: missing 'command'");
  if (command == "sweep") throw std::invalid_argument("config: 'command' cannot be sweep");
  args.push_back(command);
  for (const auto& [key, values] : config) {
    if (key == "command") continue;
    if (values.size() == 1 && (values.front() == "true" || values.front() == "false")) {
      if (values.front() == "true") args.push_back("--" + key);
      continue;
    }
    if (values.empty()) throw std::invalid_argument("config: key '" + key + "' has an empty value");
    args.push_back("--" + key);
    for (const auto& v : values) args.push_back(v);
  }
  return args;
}

}  // namespace slrlab::cli
