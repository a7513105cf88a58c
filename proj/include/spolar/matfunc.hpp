#pragma once

// Generalized matrix sign functions and the principal square root, both
// evaluated on the complex Schur form.
//
// A generalized sign function is a primary matrix function whose stem takes
// unit-modulus values, commutes with conjugation and has all derivatives
// zero. The last property means the function is constant on every cluster of
// eigenvalues sharing a stem value, so each diagonal block of the reordered
// Schur factor maps to c * I and only the off-diagonal blocks need the
// Parlett recurrence.

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "spolar/core.hpp"

namespace spolar {

enum class SignKind { Sign1, Sign2, Sign3, Custom };

/// Custom stems must be pure functions; they are called from const code and
/// may be shared between threads.
using StemFunction = std::function<Complex(Complex)>;

struct SignFunctionSpec {
  SignKind kind = SignKind::Sign2;
  StemFunction custom_stem;  // only used when kind == Custom

  static SignFunctionSpec sign1() { return {SignKind::Sign1, {}}; }
  static SignFunctionSpec sign2() { return {SignKind::Sign2, {}}; }
  static SignFunctionSpec sign3() { return {SignKind::Sign3, {}}; }
  static SignFunctionSpec custom(StemFunction f) { return {SignKind::Custom, std::move(f)}; }
};

std::string_view to_string(SignKind kind);
SignKind parse_sign_kind(std::string_view name);

/// Knobs that do not change the mathematical result.
struct EvalOptions {
  // Randomly permute the Schur diagonal before evaluating. Results must not
  // depend on it beyond rounding.
  std::optional<std::uint64_t> schur_shuffle_seed;
};

/// Pointwise stem value. Sign1: +1 for Re > 0 or on the punctured imaginary
/// axis, -1 for Re < 0. Sign2: -1 on the open negative real axis, +1
/// elsewhere. Sign3: conj(z)/|z|. Throws UndefinedAtZero for z == 0.
Complex stem_value(Complex lambda, const SignFunctionSpec& spec);

struct EigenClassification {
  Complex value;         // eigenvalue as it appears on the Schur diagonal
  Complex stem;          // stem value assigned to its cluster
  double discontinuity;  // distance to the nearest stem discontinuity
};

struct SignResult {
  ComplexMatrix sigma;
  std::vector<EigenClassification> classification;
};

/// Sigma = sigma(A) by Schur-Parlett.
///
/// Eigenvalues closer than sqrt(tol_class) * ||A||_F are treated as one
/// (numerically defective) eigenvalue and classified by their mean. Within
/// tol_class * ||A||_F of the origin the stem is undefined; within the same
/// band of the imaginary axis (Sign1) the side is ambiguous. For Sign2 an
/// eigenvalue with Re < 0 and |Im| inside the band is taken to lie on the
/// negative real axis, and |Im| in (band, 100 band] is ambiguous. Ambiguity
/// raises NearDiscontinuity.
///
/// Real input with a conjugation-respecting stem yields a real Sigma.
SignResult generalized_sign(const ComplexMatrix& a, const SignFunctionSpec& spec,
                            const Tolerances& tol = {}, const EvalOptions& opts = {});

/// Principal square root through the upper-triangular Schur recurrence.
/// Throws UndefinedAtZero or NegativeRealEigenvalue (Re < 0, |Im| within
/// tol_class * ||A||_F).
ComplexMatrix principal_sqrt(const ComplexMatrix& a, const Tolerances& tol = {},
                             const EvalOptions& opts = {});

}  // namespace spolar
