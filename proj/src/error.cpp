#include "su11/error.hpp"

namespace su11 {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::ZOutOfDomain: return "ZOutOfDomain";
    case ErrorKind::TrigRegime: return "TrigRegime";
    case ErrorKind::DecompositionSingular: return "DecompositionSingular";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
  }
  return "Unknown";
}

}  // namespace su11
