#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twinsmooth::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kUsage = 2, kVerifyFailed = 3 };

/// Full command line, program name excluded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace twinsmooth::cli
