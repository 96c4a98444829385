#pragma once

// Command-line front end. Exit codes: 0 success, 1 runtime error, 2 usage
// error, 3 result differs from --expect (or a fixture check failed).

#include <ostream>
#include <string>
#include <vector>

namespace obstructa::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_mismatch = 3;

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace obstructa::cli
