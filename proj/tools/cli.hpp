#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pfprint::cli {

/// Exit codes of the command-line tool.
inline constexpr int kAccept = 0;
inline constexpr int kReject = 1;
inline constexpr int kMalformed = 2;

/// Runs `pfprint <args...>` with the given output streams; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pfprint::cli
