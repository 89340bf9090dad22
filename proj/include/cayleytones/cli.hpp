#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cayleytones::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_validation = 2;

/// Runs the command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cayleytones::cli
