#ifndef DCP_TOOLS_CLI_HPP
#define DCP_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace dcp::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kContractViolated = 1,  // ran, but a checked tolerance failed
  kUsage = 2,             // bad arguments, bad input files, guard violations
};

/// Runs the command line `args` (program name excluded). CSV tables go to
/// `out` as well as to files under --out; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcp::cli

#endif  // DCP_TOOLS_CLI_HPP
