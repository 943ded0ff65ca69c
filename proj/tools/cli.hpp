#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qdpot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitMath = 3;

/// Runs one subcommand.  Results go to `out` unless --out is given;
/// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdpot::cli
