#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aircoh::cli {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kSidecarSchema = "aircoh.run/1";

/// Maximum spread accepted on the command line; larger values approach the
/// non-normalizable uniform-spread limit.
inline constexpr double kSigmaCap = 1e3;

enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3 };

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aircoh::cli
