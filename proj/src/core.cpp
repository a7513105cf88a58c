#include "spolar/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spolar/eigenkernels.hpp"

namespace spolar {

std::string_view to_string(FormKind form) {
  switch (form) {
    case FormKind::RealBilinear: return "real_bilinear";
    case FormKind::ComplexBilinear: return "complex_bilinear";
    case FormKind::Sesquilinear: return "sesquilinear";
  }
  return "unknown";
}

FormKind parse_form_kind(std::string_view name) {
  if (name == "real_bilinear") return FormKind::RealBilinear;
  if (name == "complex_bilinear") return FormKind::ComplexBilinear;
  if (name == "sesquilinear") return FormKind::Sesquilinear;
  throw Error(ErrorKind::SchemaError,
              "form: expected real_bilinear|complex_bilinear|sesquilinear, got '" +
                  std::string(name) + "'");
}

void validate(const Tolerances& tol) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(tol.tol_sing)) throw Error(ErrorKind::SchemaError, "tol_sing must be > 0");
  if (!positive(tol.tol_eq)) throw Error(ErrorKind::SchemaError, "tol_eq must be > 0");
  if (!positive(tol.tol_class)) throw Error(ErrorKind::SchemaError, "tol_class must be > 0");
}

void require_finite(const ComplexMatrix& a, std::string_view name) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
        throw Error(ErrorKind::SchemaError, std::string(name) + ": non-finite entry at (" +
                                                std::to_string(i) + "," + std::to_string(j) +
                                                ")");
      }
    }
  }
}

bool is_real(const ComplexMatrix& a) {
  return (a.imag().array() == 0.0).all();
}

double relative_residual(const ComplexMatrix& x, const ComplexMatrix& y) {
  return (x - y).norm() / std::max(1.0, y.norm());
}

double singular_value_ratio(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<ComplexMatrix>(a).singularValues();
  const double largest = sv(0);
  if (largest == 0.0) return 0.0;
  return sv(sv.size() - 1) / largest;
}

ComplexMatrix sharp(const ComplexMatrix& a, FormKind form) {
  if (form == FormKind::Sesquilinear) return a.adjoint();
  return a.transpose();
}

ScalarProductSpace::ScalarProductSpace(ComplexMatrix matrix, FormKind form, const Tolerances& tol)
    : matrix_(std::move(matrix)), form_(form) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "product matrix must be square and non-empty");
  }
  require_finite(matrix_, "product matrix");
  if (form_ == FormKind::RealBilinear && !is_real(matrix_)) {
    throw Error(ErrorKind::InvalidForm, "real_bilinear product matrix has nonzero imaginary part");
  }
  const double ratio = singular_value_ratio(matrix_);
  if (!(ratio > tol.tol_sing)) {
    throw Error(ErrorKind::SingularProductMatrix, "product matrix must be nonsingular", ratio);
  }
  lu_.compute(matrix_);
}

ComplexMatrix ScalarProductSpace::solve(const ComplexMatrix& x) const { return lu_.solve(x); }

Complex ScalarProductSpace::inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const {
  const Eigen::VectorXcd ny = matrix_ * y;
  if (form_ == FormKind::Sesquilinear) return x.dot(ny);  // dot conjugates the left operand
  return (x.transpose() * ny)(0, 0);
}

ProductPair::ProductPair(ScalarProductSpace m_space, ScalarProductSpace n_space)
    : m_(std::move(m_space)), n_(std::move(n_space)) {
  if (m_.form() != n_.form()) {
    throw Error(ErrorKind::InvalidForm, "both spaces of a pair must carry the same form");
  }
}

bool ProductPair::is_single() const {
  return m_.dim() == n_.dim() && m_.matrix() == n_.matrix();
}

ComplexMatrix adjoint_n(const ComplexMatrix& a, const ScalarProductSpace& space) {
  if (a.rows() != space.dim() || a.cols() != space.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "adjoint_n: A must be square of the space dimension");
  }
  return space.solve(sharp(a, space.form()) * space.matrix());
}

ComplexMatrix adjoint_mn(const ComplexMatrix& a, const ProductPair& pair) {
  if (a.rows() != pair.m() || a.cols() != pair.n()) {
    throw Error(ErrorKind::DimensionMismatch, "adjoint_mn: A must be m x n for the pair (M, N)");
  }
  return pair.n_space().solve(sharp(a, pair.form()) * pair.m_space().matrix());
}

ComplexMatrix adjoint_raw(const ComplexMatrix& a, const ComplexMatrix& m, const ComplexMatrix& n,
                          FormKind form) {
  if (a.rows() != m.rows() || a.cols() != n.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "adjoint_raw: shape mismatch");
  }
  return n.partialPivLu().solve(sharp(a, form) * m);
}

PredicateResult double_adjoint_holds(const ComplexMatrix& f, const ProductPair& pair,
                                     const Tolerances& tol) {
  const ComplexMatrix back = adjoint_mn(adjoint_mn(f, pair), pair.swapped());
  const double r = relative_residual(back, f);
  return {r <= tol.tol_eq, r};
}

bool is_r_positive_definite(const ComplexMatrix& a, const Tolerances& tol) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "is_r_positive_definite: matrix must be square");
  }
  const double band = tol.tol_class * a.norm();
  const auto ev = kernels::eigenvalues(a);
  return std::all_of(ev.begin(), ev.end(), [band](Complex z) { return z.real() > band; });
}

PredicateResult has_orthonormal_columns(const ComplexMatrix& w, const ProductPair& pair,
                                        const Tolerances& tol) {
  const auto n = pair.n();
  const ComplexMatrix gram = adjoint_mn(w, pair) * w;
  const double r = (gram - ComplexMatrix::Identity(n, n)).norm() / static_cast<double>(n);
  return {r <= tol.tol_eq, r};
}

PredicateResult has_orthonormal_rows(const ComplexMatrix& w, const ProductPair& pair,
                                     const Tolerances& tol) {
  const auto m = pair.m();
  const ComplexMatrix gram = w * adjoint_mn(w, pair);
  const double r = (gram - ComplexMatrix::Identity(m, m)).norm() / static_cast<double>(m);
  return {r <= tol.tol_eq, r};
}

}  // namespace spolar
