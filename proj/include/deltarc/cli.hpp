#pragma once

// Command-line front end. Exit codes: 0 success, 1 analysis findings
// (no valid order, ill-formed variant, changed variants), 2 usage, input or
// parse errors.

#include <ostream>
#include <string>
#include <vector>

namespace deltarc::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_findings = 1;
inline constexpr int exit_usage = 2;

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace deltarc::cli
