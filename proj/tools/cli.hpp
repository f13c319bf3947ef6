#pragma once

#include <ostream>

namespace iff::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

/// Runs one `iffc` invocation, writing reports to `out` and errors to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace iff::cli
