#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spolar {

enum class ErrorKind {
  // Shape and schema problems: the input is ill-posed as data.
  DimensionMismatch,
  InvalidForm,
  IoError,
  ParseError,
  SchemaError,
  InvalidRecipe,
  // Mathematical preconditions of the decompositions.
  SingularProductMatrix,
  SingularInput,
  SingularGram,
  DoubleAdjointViolation,
  UndefinedAtZero,
  NearDiscontinuity,
  NegativeRealEigenvalue,
  InvalidStem,
  // Numerical kernel failures.
  ConvergenceFailure,
  IllConditionedSwap,
  SingularSylvester,
  GenerationExhausted,
};

std::string_view to_string(ErrorKind kind);

/// True for failures meaning "the requested object does not exist for this
/// input", as opposed to malformed input or a numerical breakdown.
bool is_precondition_violation(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string clause, double residual = 0.0);

  ErrorKind kind() const noexcept { return kind_; }
  // The violated condition, e.g. "(F^[M,N])^[N,M] = F".
  const std::string& clause() const noexcept { return clause_; }
  double residual() const noexcept { return residual_; }

 private:
  ErrorKind kind_;
  std::string clause_;
  double residual_;
};

}  // namespace spolar
