#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mepvcb::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitCap = 3;

inline constexpr int kFormatVersion = 1;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mepvcb::cli
