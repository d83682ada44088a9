#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symdef::cli {

enum ExitCode : int {
  kVerified = 0,
  kFalsified = 1,
  kInconclusive = 2,
  kUsage = 64,
  kInternal = 70,  ///< an internal invariant failed
};

/// Runs one subcommand. `args` excludes the program name. The report goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symdef::cli
