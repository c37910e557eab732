#include "gaussbm/error.hpp"

namespace gaussbm {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "E_DOMAIN";
    case ErrorCode::Pole: return "E_POLE";
    case ErrorCode::Range: return "E_RANGE";
    case ErrorCode::Convergence: return "E_CONVERGENCE";
    case ErrorCode::Evaluation: return "E_EVALUATION";
    case ErrorCode::Divergence: return "E_DIVERGENCE";
    case ErrorCode::Search: return "E_SEARCH";
    case ErrorCode::Shape: return "E_SHAPE";
    case ErrorCode::Transform: return "E_TRANSFORM";
    case ErrorCode::Usage: return "E_USAGE";
  }
  return "E_UNKNOWN";
}

}  // namespace gaussbm
