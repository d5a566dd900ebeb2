#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gl4st::cli {

/// Environment variable read for the default OpenMP thread count.
inline constexpr const char* kThreadsEnv = "GL4ST_NUM_THREADS";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitGateFailed = 2;

/// Runs one invocation. `args` excludes the program name. The document goes
/// to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gl4st::cli
