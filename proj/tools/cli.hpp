#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace flagnest::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;      ///< verification or self-check failed
inline constexpr int kExitUnsupported = 2;  ///< well-formed input outside the supported domain
inline constexpr int kExitUsage = 64;       ///< malformed command line

inline constexpr const char* kSchema = "flagnest/1";

/// Parses argv (args[0] is the program name), dispatches, and writes the report to `out`
/// (or to the --out file). Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flagnest::cli
