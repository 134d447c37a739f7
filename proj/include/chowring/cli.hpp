#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chowring::cli {

// Prefix of every diagnostic line, followed by "error[<kind>]: ".
inline constexpr const char* kProgram = "chowcalc";

/// Runs one command. `args` excludes the program name.
/// Exit codes: 0 success, 1 counterexamples or consistency failure, 2 usage, input or file error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chowring::cli
