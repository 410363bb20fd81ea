#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace amalgam::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

/// Runs one subcommand. `args` excludes the program name.
/// Results go to the output directory (AMALGAM_OUT, else --out, else ./amalgam_out).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

} // namespace amalgam::cli
