#include "bjg/core.hpp"

namespace bjg {

std::string_view to_string(Field field) { return field == Field::Real ? "real" : "complex"; }

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::ZeroOperator: return "ZeroOperator";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::DegenerateComponent: return "DegenerateComponent";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::SingularBasis: return "SingularBasis";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::WrongVerdict: return "WrongVerdict";
    case ErrorKind::WitnessNotFound: return "WitnessNotFound";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DimensionError: return "DimensionError";
  }
  return "Unknown";
}

}  // namespace bjg
