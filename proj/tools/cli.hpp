#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hardyrep::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// Runs one command. args excludes the program name. The report goes to out,
// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hardyrep::cli
