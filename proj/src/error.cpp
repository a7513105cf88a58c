#include "spolar/error.hpp"

#include <sstream>

namespace spolar {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidForm: return "InvalidForm";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InvalidRecipe: return "InvalidRecipe";
    case ErrorKind::SingularProductMatrix: return "SingularProductMatrix";
    case ErrorKind::SingularInput: return "SingularInput";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::DoubleAdjointViolation: return "DoubleAdjointViolation";
    case ErrorKind::UndefinedAtZero: return "UndefinedAtZero";
    case ErrorKind::NearDiscontinuity: return "NearDiscontinuity";
    case ErrorKind::NegativeRealEigenvalue: return "NegativeRealEigenvalue";
    case ErrorKind::InvalidStem: return "InvalidStem";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::IllConditionedSwap: return "IllConditionedSwap";
    case ErrorKind::SingularSylvester: return "SingularSylvester";
    case ErrorKind::GenerationExhausted: return "GenerationExhausted";
  }
  return "Unknown";
}

bool is_precondition_violation(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularProductMatrix:
    case ErrorKind::SingularInput:
    case ErrorKind::SingularGram:
    case ErrorKind::DoubleAdjointViolation:
    case ErrorKind::UndefinedAtZero:
    case ErrorKind::NearDiscontinuity:
    case ErrorKind::NegativeRealEigenvalue:
    case ErrorKind::InvalidStem:
      return true;
    default:
      return false;
  }
}

namespace {

std::string describe(ErrorKind kind, const std::string& clause, double residual) {
  std::ostringstream os;
  os << to_string(kind) << ": " << clause;
  if (residual != 0.0) os << " (residual " << residual << ")";
  return os.str();
}

}  // namespace

Error::Error(ErrorKind kind, std::string clause, double residual)
    : std::runtime_error(describe(kind, clause, residual)),
      kind_(kind),
      clause_(std::move(clause)),
      residual_(residual) {}

}  // namespace spolar
