#pragma once

// Command implementations behind the minkcli tool. Each returns the process
// exit code: 0 pass, 1 operational error, 2 assertion failure.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mink {

struct CommandArgs {
  std::optional<std::string> config_path;  // default set library when absent
  std::vector<std::string> sets;
  std::optional<double> s;
  std::optional<double> r;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  int lifts = 0;  // content/dim: embed the set this many extra dimensions up
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitAssertion = 2;

int run_command(const std::string& command, const CommandArgs& args, std::ostream& out,
                std::ostream& err);

/// Names accepted by run_command.
const std::vector<std::string>& command_names();

}  // namespace mink
