#pragma once

// Right (F = W S) and left (F = S' W') polar decompositions with respect to
// one or two scalar products, with Sigma = sigma(F^[M,N] F) (right) or
// sigma(F F^[M,N]) (left) for a generalized sign function sigma:
//
//   S = (Sigma Gram)^{1/2},  W = F S^{-1}   (right)
//   S = (Sigma Gram)^{1/2},  W = S^{-1} F   (left)
//
// The decomposition exists iff (F^[M,N])^[N,M] = F and the Gram matrix is
// nonsingular; drivers check both and throw a structured Error otherwise.

#include <string>
#include <string_view>
#include <vector>

#include "spolar/core.hpp"
#include "spolar/matfunc.hpp"

namespace spolar {

enum class Side { Right, Left };

std::string_view to_string(Side side);

struct PolarFactors {
  ComplexMatrix w;
  ComplexMatrix s;      // n x n for Right, m x m for Left
  ComplexMatrix sigma;  // same shape as s
  Side side = Side::Right;
  SignFunctionSpec spec;
};

struct TwoSidedFactors {
  PolarFactors right;
  PolarFactors left;
};

PolarFactors right_polar_square(const ComplexMatrix& f, const ScalarProductSpace& space,
                                const SignFunctionSpec& spec, const Tolerances& tol = {},
                                const EvalOptions& opts = {});

PolarFactors left_polar_square(const ComplexMatrix& f, const ScalarProductSpace& space,
                               const SignFunctionSpec& spec, const Tolerances& tol = {},
                               const EvalOptions& opts = {});

/// m >= n.
PolarFactors right_polar_rect(const ComplexMatrix& f, const ProductPair& pair,
                              const SignFunctionSpec& spec, const Tolerances& tol = {},
                              const EvalOptions& opts = {});

/// m <= n.
PolarFactors left_polar_rect(const ComplexMatrix& f, const ProductPair& pair,
                             const SignFunctionSpec& spec, const Tolerances& tol = {},
                             const EvalOptions& opts = {});

/// Square F with two products: F = W S = S' W with a shared W.
TwoSidedFactors both_polar_square_two_products(const ComplexMatrix& f, const ProductPair& pair,
                                               const SignFunctionSpec& spec,
                                               const Tolerances& tol = {},
                                               const EvalOptions& opts = {});

/// The Gram matrix the given side is built from: F^[M,N] F or F F^[M,N].
ComplexMatrix gram_matrix(const ComplexMatrix& f, const ProductPair& pair, Side side);

// ---------------------------------------------------------------------------
// Certification

/// |det| deviations are checked against this bound.
inline constexpr double kDeterminantTolerance = 1e-9;

struct CertificationCheck {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool lower_bound = false;  // pass iff value > limit instead of value <= limit
  bool passed = false;
};

struct CertificationReport {
  std::vector<CertificationCheck> checks;

  bool passed() const;
  const CertificationCheck* find(std::string_view name) const;
  /// Largest value among upper-bounded checks whose name starts with prefix
  /// (all of them for an empty prefix).
  double max_residual(std::string_view prefix = {}) const;
};

/// Evaluates every invariant the decomposition guarantees for the given
/// factors: reconstruction, r-positive-definiteness of S, selfadjointness of
/// S with respect to the plain and Sigma-twisted products, orthonormality of
/// W against the twisted pair, the double adjoint of W, [Sigma, S] = 0,
/// S^2 = Sigma Gram, Sigma = sigma(Gram), and, for a single square product,
/// the determinant identities. Never throws on mathematical failure; a check
/// that cannot be evaluated is recorded as failed with an infinite value.
CertificationReport certify(const PolarFactors& factors, const ComplexMatrix& f,
                            const ProductPair& pair, const Tolerances& tol = {});

CertificationReport certify(const PolarFactors& factors, const ComplexMatrix& f,
                            const ScalarProductSpace& space, const Tolerances& tol = {});

/// Both sides plus the cross relations W_right = W_left, S' = W S W^{-1} and
/// Sigma' = W Sigma W^{-1}. Check names are prefixed "right." / "left." /
/// "pair.".
CertificationReport certify(const TwoSidedFactors& factors, const ComplexMatrix& f,
                            const ProductPair& pair, const Tolerances& tol = {});

}  // namespace spolar
