#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kpbit::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kOracleTooLarge = 4,
  kInfeasibleCircuit = 5,
};

/// Runs one `kpbit` invocation. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kpbit::cli
