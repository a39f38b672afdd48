#pragma once

#include <iosfwd>

namespace estf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFileError = 1;
inline constexpr int kExitConfigError = 2;

/// Entry point behind the `estf` executable: `estf <command> [options]`.
/// Commands: augment, stats, simulate, bench, grid.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace estf::cli
