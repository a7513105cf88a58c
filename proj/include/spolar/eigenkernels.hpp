#pragma once

// Dense complex eigen-structure kernels: Schur form, reordering of the Schur
// diagonal and triangular Sylvester solves.

#include <cstdint>
#include <span>
#include <vector>

#include "spolar/core.hpp"

namespace spolar::kernels {

/// A = q t q^*, q unitary, t upper triangular.
struct SchurForm {
  ComplexMatrix q;
  ComplexMatrix t;
};

/// Iterations allowed per row before ConvergenceFailure (total budget 30 n).
inline constexpr int kSchurIterationsPerRow = 30;

SchurForm schur(const ComplexMatrix& a);

/// Reorders the diagonal of t so that entries are sorted by ascending
/// cluster id (stable within a cluster). cluster_of[i] is the cluster of the
/// eigenvalue currently at diagonal position i. Uses adjacent unitary swaps.
SchurForm reorder(const SchurForm& form, std::span<const int> cluster_of,
                  const Tolerances& tol = {});

/// Applies a seeded random permutation to the Schur diagonal. Used to check
/// that results do not depend on the eigenvalue ordering.
SchurForm shuffle(const SchurForm& form, std::uint64_t seed, const Tolerances& tol = {});

/// Solves t11 X - X t22 = c for upper-triangular t11 (p x p), t22 (q x q).
ComplexMatrix sylvester_triangular(const ComplexMatrix& t11, const ComplexMatrix& t22,
                                   const ComplexMatrix& c, const Tolerances& tol = {});

std::vector<Complex> eigenvalues(const ComplexMatrix& a);

}  // namespace spolar::kernels
