#pragma once

#include <ostream>

namespace rsdps::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kCapExceeded = 2, kIoError = 3 };

/// Parses argv and runs one subcommand (assign, audit, experiment, plot).
/// Regular output goes to `out`, diagnostics and progress to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rsdps::cli
