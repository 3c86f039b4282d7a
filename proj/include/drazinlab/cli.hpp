#pragma once

#include <atomic>
#include <ostream>

namespace drazinlab {

enum ExitCode : int {
  kExitPass = 0,
  kExitFailure = 1,
  kExitInput = 2,
  kExitNumerical = 3,
  kExitPrecondition = 4,
};

/// Set from a signal handler to stop a running campaign early; the partial
/// report is still written.
std::atomic<bool>& interrupt_flag();

/// Runs one command line. JSON results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace drazinlab
