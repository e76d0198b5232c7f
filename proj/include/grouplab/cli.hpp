#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace grouplab::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { exit_pass = 0, exit_fail = 1, exit_input = 2, exit_inconclusive = 3 };

/// Runs one command line (argv[0] is the program name). Reports go to `out`,
/// diagnostics to `err`; input errors never produce a report.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace grouplab::cli
