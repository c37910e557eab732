#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gaussbm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolated = 2;

/// Environment variable holding the default quadrature tolerance (--tol).
inline constexpr const char* kToleranceEnv = "GAUSSBM_TOL";

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out`, diagnostics to `err` prefixed with an E_* code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gaussbm::cli
