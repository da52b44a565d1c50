#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace benford::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // a verification check failed, or an internal error
inline constexpr int kExitParse = 2;    // bad arguments, unreadable input or missing column
inline constexpr int kExitEmpty = 3;    // input contained no valid items

/// Runs the command line with `args` (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace benford::cli
