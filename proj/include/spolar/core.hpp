#pragma once

// Scalar products, adjoints and the structural predicates built on them.
//
// A scalar product on K^n is [x,y]_N = x^T N y (bilinear) or x^* N y
// (sesquilinear) for a nonsingular N. Everything is carried in complex
// double precision; real bilinear products simply require zero imaginary
// parts throughout.

#include <complex>
#include <string_view>

#include <Eigen/Dense>

#include "spolar/error.hpp"

namespace spolar {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

enum class FormKind { RealBilinear, ComplexBilinear, Sesquilinear };

std::string_view to_string(FormKind form);
FormKind parse_form_kind(std::string_view name);

struct Tolerances {
  double tol_sing = 1e-12;   // relative singular-value cutoff
  double tol_eq = 1e-8;      // relative residual for matrix equalities
  double tol_class = 1e-8;   // eigenvalue classification band, relative to ||A||_F
};

void validate(const Tolerances& tol);

/// Throws SchemaError naming `name` if any entry is NaN or Inf.
void require_finite(const ComplexMatrix& a, std::string_view name);

bool is_real(const ComplexMatrix& a);

/// ||x - y||_F / max(1, ||y||_F).
double relative_residual(const ComplexMatrix& x, const ComplexMatrix& y);

/// sigma_min / sigma_max; zero for an empty or all-zero matrix.
double singular_value_ratio(const ComplexMatrix& a);

/// A^T for bilinear forms, the conjugate transpose for sesquilinear ones.
ComplexMatrix sharp(const ComplexMatrix& a, FormKind form);

class ScalarProductSpace {
 public:
  /// Validates squareness, finiteness, nonsingularity (sigma ratio > tol_sing)
  /// and, for RealBilinear, zero imaginary parts.
  ScalarProductSpace(ComplexMatrix matrix, FormKind form, const Tolerances& tol = {});

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  FormKind form() const noexcept { return form_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }

  /// N^{-1} X through the cached pivoted LU factorization.
  ComplexMatrix solve(const ComplexMatrix& x) const;

  /// [x,y]_N.
  Complex inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const;

 private:
  ComplexMatrix matrix_;
  FormKind form_;
  Eigen::PartialPivLU<ComplexMatrix> lu_;
};

class ProductPair {
 public:
  ProductPair(ScalarProductSpace m_space, ScalarProductSpace n_space);

  /// The pair (N, N).
  static ProductPair single(const ScalarProductSpace& space) { return {space, space}; }

  const ScalarProductSpace& m_space() const noexcept { return m_; }
  const ScalarProductSpace& n_space() const noexcept { return n_; }
  FormKind form() const noexcept { return m_.form(); }
  Eigen::Index m() const noexcept { return m_.dim(); }
  Eigen::Index n() const noexcept { return n_.dim(); }

  /// (N, M): the pair governing adjoints of n x m matrices.
  ProductPair swapped() const { return {n_, m_}; }

  /// True when M and N are the same matrix (single scalar product).
  bool is_single() const;

 private:
  ScalarProductSpace m_;
  ScalarProductSpace n_;
};

/// A^[N] = N^{-1} A^# N.
ComplexMatrix adjoint_n(const ComplexMatrix& a, const ScalarProductSpace& space);

/// A^[M,N] = N^{-1} A^# M for an m x n matrix A.
ComplexMatrix adjoint_mn(const ComplexMatrix& a, const ProductPair& pair);

/// N^{-1} A^# M for raw product matrices, without the nonsingularity and
/// form validation done by ScalarProductSpace. Used for the Sigma-twisted
/// products (N Sigma, M Sigma^{-1}, ...) that appear in certification.
ComplexMatrix adjoint_raw(const ComplexMatrix& a, const ComplexMatrix& m,
                          const ComplexMatrix& n, FormKind form);

struct PredicateResult {
  bool holds = false;
  double residual = 0.0;

  explicit operator bool() const noexcept { return holds; }
};

/// (F^[M,N])^[N,M] = F with relative Frobenius residual <= tol_eq.
PredicateResult double_adjoint_holds(const ComplexMatrix& f, const ProductPair& pair,
                                     const Tolerances& tol = {});

/// Every eigenvalue has real part > tol_class * ||A||_F.
bool is_r_positive_definite(const ComplexMatrix& a, const Tolerances& tol = {});

/// W^[M,N] W = I_n, residual ||W^[M,N] W - I_n||_F / n.
PredicateResult has_orthonormal_columns(const ComplexMatrix& w, const ProductPair& pair,
                                        const Tolerances& tol = {});

/// W W^[M,N] = I_m, residual ||W W^[M,N] - I_m||_F / m.
PredicateResult has_orthonormal_rows(const ComplexMatrix& w, const ProductPair& pair,
                                     const Tolerances& tol = {});

}  // namespace spolar
