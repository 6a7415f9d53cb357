#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace normdyn::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kValidation = 2, kRuntime = 3 };

/// Runs the command line; results go to `out` unless --out names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace normdyn::cli
