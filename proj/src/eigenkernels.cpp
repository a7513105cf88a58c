#include "spolar/eigenkernels.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

namespace spolar::kernels {

SchurForm schur(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "schur: matrix must be square");
  require_finite(a, "schur input");
  const Eigen::Index n = a.rows();
  if (n == 0) return {ComplexMatrix(0, 0), ComplexMatrix(0, 0)};

  Eigen::ComplexSchur<ComplexMatrix> solver(n);
  solver.setMaxIterations(kSchurIterationsPerRow * n);
  solver.compute(a, /*computeU=*/true);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure,
                "complex QR iteration exceeded " + std::to_string(kSchurIterationsPerRow * n) +
                    " iterations");
  }
  SchurForm form{solver.matrixU(), solver.matrixT()};
  form.t.triangularView<Eigen::StrictlyLower>().setZero();
  return form;
}

namespace {

// Exchanges the adjacent diagonal entries k and k+1 of the triangular factor.
void swap_adjacent(SchurForm& form, Eigen::Index k, double limit) {
  ComplexMatrix& t = form.t;
  const Complex a = t(k, k);
  const Complex b = t(k + 1, k + 1);
  if (a == b) return;

  // Eigenvector of [[a, c], [0, b]] for b becomes the new leading direction.
  Eigen::Vector2cd x(t(k, k + 1), b - a);
  x.normalize();
  Eigen::Matrix2cd g;
  g << x(0), -std::conj(x(1)), x(1), std::conj(x(0));

  t.middleRows(k, 2) = g.adjoint() * t.middleRows(k, 2);
  t.middleCols(k, 2) = t.middleCols(k, 2) * g;
  form.q.middleCols(k, 2) = form.q.middleCols(k, 2) * g;

  const double spill = std::abs(t(k + 1, k));
  if (spill > limit) {
    throw Error(ErrorKind::IllConditionedSwap, "Schur swap lost triangularity", spill);
  }
  t(k + 1, k) = 0.0;
  t(k, k) = b;
  t(k + 1, k + 1) = a;
}

}  // namespace

SchurForm reorder(const SchurForm& form, std::span<const int> cluster_of, const Tolerances& tol) {
  const auto n = form.t.rows();
  if (static_cast<Eigen::Index>(cluster_of.size()) != n) {
    throw Error(ErrorKind::DimensionMismatch, "reorder: one cluster id per eigenvalue required");
  }
  SchurForm out = form;
  std::vector<int> ids(cluster_of.begin(), cluster_of.end());
  const double limit = tol.tol_eq * std::max(1.0, form.t.norm());

  // Bubble sort by adjacent swaps; equal ids never cross, so it is stable.
  for (Eigen::Index pass = 0; pass < n; ++pass) {
    bool swapped = false;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      if (ids[k] > ids[k + 1]) {
        swap_adjacent(out, k, limit);
        std::swap(ids[k], ids[k + 1]);
        swapped = true;
      }
    }
    if (!swapped) break;
  }
  return out;
}

SchurForm shuffle(const SchurForm& form, std::uint64_t seed, const Tolerances& tol) {
  std::vector<int> ids(static_cast<std::size_t>(form.t.rows()));
  std::iota(ids.begin(), ids.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  return reorder(form, ids, tol);
}

ComplexMatrix sylvester_triangular(const ComplexMatrix& t11, const ComplexMatrix& t22,
                                   const ComplexMatrix& c, const Tolerances& tol) {
  const Eigen::Index p = t11.rows();
  const Eigen::Index q = t22.rows();
  if (t11.cols() != p || t22.cols() != q || c.rows() != p || c.cols() != q) {
    throw Error(ErrorKind::DimensionMismatch, "sylvester_triangular: shape mismatch");
  }
  const double gap_floor = tol.tol_class * (t11.norm() + t22.norm());

  ComplexMatrix x(p, q);
  for (Eigen::Index j = 0; j < q; ++j) {
    Eigen::VectorXcd rhs = c.col(j);
    if (j > 0) rhs += x.leftCols(j) * t22.col(j).head(j);
    const Complex shift = t22(j, j);
    for (Eigen::Index i = p - 1; i >= 0; --i) {
      Complex acc = rhs(i);
      for (Eigen::Index k = i + 1; k < p; ++k) acc -= t11(i, k) * x(k, j);
      const Complex pivot = t11(i, i) - shift;
      if (std::abs(pivot) <= gap_floor) {
        throw Error(ErrorKind::SingularSylvester, "spectra of the diagonal blocks overlap",
                    std::abs(pivot));
      }
      x(i, j) = acc / pivot;
    }
  }
  return x;
}

std::vector<Complex> eigenvalues(const ComplexMatrix& a) {
  const SchurForm form = schur(a);
  const Eigen::VectorXcd d = form.t.diagonal();
  return {d.data(), d.data() + d.size()};
}

}  // namespace spolar::kernels
