#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lgtool {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kInfeasible = 3,
  kVerificationFailure = 4,
};

enum class Format { Tsv, Json };

struct RunConfig {
  std::string command;
  std::string pattern;  // file, directory (compare), or a builtin name
  std::optional<double> n;
  std::optional<int> r;
  std::optional<std::string> s;
  std::optional<int> lambda;
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
  Format format = Format::Tsv;
  std::string construction;  // "g1", "g2", or empty for the command's default
  std::string objective = "max";
  int level = 2;
  std::optional<std::string> walk_x;  // compare: extra walk rows at r = n^walk_x
};

/// Parses and runs one command line (without the program name). Everything the
/// command prints goes to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_exponent(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_compare(const RunConfig& config, std::ostream& out);
int cmd_optimize(const RunConfig& config, std::ostream& out);

}  // namespace lgtool
