#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symlift::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitObstruction = 2;
inline constexpr int kExitInput = 3;

/// Runs one command line (without the program name). Returns the exit code;
/// never throws.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Thread budget from SYMLIFT_THREADS (a positive integer), or the hardware
/// concurrency when unset. Throws InputError on a malformed value.
unsigned thread_budget();

}  // namespace symlift::cli
