#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace slrlab::cli {

enum ExitCode : int {
  kOk = 0,
  kOracleFailure = 1,
  kUsage = 2,
  kCapacity = 3,
  kUnsupportedRegime = 4,
  kIoError = 5,
};

/// Runs the command line `args` (without the program name), writing reports
/// to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Flat "key = value" / "key = [a, b, c]" configuration, in file order.
/// Blank lines and lines starting with '#' are ignored.
using ConfigEntries = std::vector<std::pair<std::string, std::vector<std::string>>>;
ConfigEntries parse_config(std::istream& in);
ConfigEntries parse_config_file(const std::string& path);

/// Command-line arguments equivalent to a config: "command" selects the
/// subcommand, every other key becomes "--key value...".
std::vector<std::string> config_to_args(const ConfigEntries& config);

}  // namespace slrlab::cli
