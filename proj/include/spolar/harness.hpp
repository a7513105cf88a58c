#pragma once

// Seeded random instances and brute-force oracles for the property suites.
//
// Random product matrices are drawn from orthosymmetric families, for which
// (F^[M,N])^[N,M] = F holds for every F: bilinear products use symmetric or
// skew-symmetric matrices, sesquilinear products Hermitian ones (or the
// real structured Z, J, D). Non-orthosymmetric coverage comes only from the
// fixed fixtures.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "spolar/core.hpp"
#include "spolar/matfunc.hpp"

namespace spolar::harness {

enum class Family { Identity, Symmetric, SkewSymmetric, Hermitian, Z, J, D, Fixture };

std::string_view to_string(Family family);

/// Families that are orthosymmetric for the given form.
std::vector<Family> orthosymmetric_families(FormKind form);

enum class Shape { Square, Tall, Wide };

struct InstanceRecipe {
  int min_dim = 1;
  int max_dim = 8;
  FormKind form = FormKind::Sesquilinear;
  bool real_field = false;    // real F and product matrices under a complex form
  Family family = Family::Identity;
  bool two_products = false;  // independent M; otherwise M = N (square only)
  Shape shape = Shape::Square;
  double condition_cap = 1e6;
  std::uint64_t seed = 0;
  std::optional<int> d_positive;  // p for the D family; defaults to ceil(n/2)
  int fixture_index = 0;          // Family::Fixture only
};

struct Instance {
  ComplexMatrix f;
  ProductPair pair;
};

/// Resample attempts before GenerationExhausted.
inline constexpr int kResampleBudget = 2000;

/// Deterministic in the recipe. F and the product matrices have condition
/// number <= condition_cap, the Gram matrix is nonsingular, and its spectrum
/// keeps a margin from every built-in stem discontinuity so the instance is
/// well posed for all three sign functions.
Instance gen_instance(const InstanceRecipe& recipe);

/// Z (anti-identity), J = [[0, I], [-I, 0]] (n even), D = diag(I_p, -I_{n-p}).
ComplexMatrix structured_matrix(Family family, int n, int p = -1);

// ---------------------------------------------------------------------------
// Fixed non-orthosymmetric fixtures

struct Fixture {
  std::string name;
  ComplexMatrix f;
  ProductPair pair;
  bool double_adjoint_holds;  // expected outcome of the precondition
};

std::vector<Fixture> non_orthosymmetric_fixtures();

// ---------------------------------------------------------------------------
// Oracles

/// A = V diag(lambda) V^{-1} with known factors.
struct Diagonalizable {
  ComplexMatrix a;
  ComplexMatrix v;
  std::vector<Complex> lambdas;
};

/// Random V (condition <= 100) and distinct eigenvalues at least 0.1 apart,
/// with |lambda| in [0.5, 2] and at least 0.1 from the imaginary axis and
/// from the negative real axis unless exactly on it.
Diagonalizable gen_diagonalizable(int n, std::uint64_t seed);

/// Random r-positive-definite X = V diag(mu) V^{-1}, Re mu >= 0.2.
Diagonalizable gen_right_half_plane(int n, std::uint64_t seed);

/// V diag(f(lambda_i)) V^{-1}, evaluated directly from the known factors.
ComplexMatrix oracle_sign_diagonalizable(const ComplexMatrix& v, std::span<const Complex> lambdas,
                                         const SignFunctionSpec& spec);

struct ClassicalPolar {
  ComplexMatrix u;
  ComplexMatrix s;
};

/// S = sqrt(F^* F) from the Hermitian eigendecomposition, U = F S^{-1}.
ClassicalPolar oracle_classical_polar(const ComplexMatrix& f, double tol_sing = 1e-12);

/// A = V J V^{-1} with J a direct sum of Jordan blocks.
struct JordanFixture {
  std::string name;
  ComplexMatrix a;
  ComplexMatrix v;
  std::vector<std::pair<Complex, int>> blocks;  // (eigenvalue, size)

  /// V diag(f(lambda_k) I_{s_k}) V^{-1}.
  ComplexMatrix expected(const SignFunctionSpec& spec) const;
};

/// Jordan blocks of sizes 2 and 3, conjugated by seeded similarities with
/// condition number below 10.
std::vector<JordanFixture> jordan_fixtures(std::uint64_t seed);

}  // namespace spolar::harness
