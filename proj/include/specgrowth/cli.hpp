#pragma once

#include <string>
#include <vector>

namespace specgrowth::cli {

// Exit codes: 0 success, 2 parse error, 3 resource cap exceeded,
// 4 certificate unavailable (report still emitted, flagged).
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitUncertified = 4;

// Runs one job. args excludes the program name.
int run(const std::vector<std::string>& args);

} // namespace specgrowth::cli
