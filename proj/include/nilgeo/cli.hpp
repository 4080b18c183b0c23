#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilgeo::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 2;
inline constexpr int exit_budget = 3;

// Runs one command line (without the program name); the report goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilgeo::cli
