// Subcommand dispatch behind the deltafan executable. Kept in the library so
// tests can drive it with string streams.

#ifndef DELTAFAN_CLI_HPP
#define DELTAFAN_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace deltafan::cli {

enum ExitCode : int { ok = 0, verdict_false = 1, usage_error = 2 };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;  // positional files
  std::optional<std::string> fan, polytope, into, move;
  std::optional<std::string> output;  // a file, or a directory for list commands
  std::uint64_t seed = 0;
  std::size_t limit = 1000;
  bool quiet = false;
};

const std::vector<std::string>& commands();

/// Runs one subcommand. Results go to config.output or `out`; diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace deltafan::cli

#endif  // DELTAFAN_CLI_HPP
