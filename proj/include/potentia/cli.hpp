#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace potentia::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitCheckFailed = 2;

struct RunConfig {
  std::string command;
  std::optional<std::filesystem::path> op;
  std::optional<std::filesystem::path> measure;
  /// "power:<alpha>", "unit" or a weight file.
  std::optional<std::string> weight;
  /// "n=<int>,L=<real>[,N=<int>]".
  std::optional<std::string> grid;
  /// Stored solution snapshot (verify).
  std::optional<std::filesystem::path> field;
  /// Inequality tag (estimate-constant, verify).
  std::optional<std::string> kind;
  std::optional<double> ell;
  std::optional<double> q;
  std::optional<double> p;
  std::optional<double> m;
  std::optional<int> samples;
  std::optional<int> budget;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> out;
  /// Experiment or solve config file; explicit fields above take precedence.
  std::optional<std::filesystem::path> config;
};

struct RunOutcome {
  int exit_code = kExitOk;
  /// Serialised JSON report (empty on input errors).
  std::string report;
  std::string diagnostic;
  /// Files written under the output directory.
  std::vector<std::filesystem::path> files;
};

const std::vector<std::string>& commands();

/// Validates the config, dispatches to the subcommand and writes
/// <out>/<command>.json plus any CSV tables or field snapshots.
RunOutcome run(const RunConfig& config);

/// Thrown by parse_arguments for --help and --version; what() is the text to print.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses argv into a config; argv[1] is the subcommand. Throws InputError on
/// malformed arguments.
RunConfig parse_arguments(int argc, const char* const* argv);

/// Full front-end: parse, run, print the report (or written paths) to `out`
/// and diagnostics to `err`; returns the exit status.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace potentia::cli
