#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gaussbm {

enum class ErrorCode {
  Domain,       // argument outside the mathematical domain
  Pole,         // Kummer b at a non-positive integer
  Range,        // argument outside the supported evaluation range
  Convergence,  // quadrature budget exhausted before tolerance
  Evaluation,   // integrand produced NaN/inf
  Divergence,   // semi-infinite integrand does not decay
  Search,       // eigenvalue bracketing failed
  Shape,        // mixed domain variants or functional/domain mismatch
  Transform,    // transform undefined for the value (log of nonpositive, ...)
  Usage,        // command-line usage
};

std::string_view error_code_name(ErrorCode code);

/// Library error. `best_estimate` is set when a computation ran out of budget
/// but still produced a usable value (quadrature convergence errors).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<double> best_estimate = std::nullopt)
      : std::runtime_error(what), code_(code), best_estimate_(best_estimate) {}

  ErrorCode code() const noexcept { return code_; }
  const std::optional<double>& best_estimate() const noexcept {
    return best_estimate_;
  }

 private:
  ErrorCode code_;
  std::optional<double> best_estimate_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace gaussbm
