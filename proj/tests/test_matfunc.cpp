#include "doctest.h"

#include "spolar/eigenkernels.hpp"
#include "spolar/harness.hpp"
#include "spolar/matfunc.hpp"
#include "test_util.hpp"

using namespace spolar;
using namespace spolar::test;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::IoError;
}

const std::vector<SignFunctionSpec> kBuiltins{SignFunctionSpec::sign1(), SignFunctionSpec::sign2(),
                                              SignFunctionSpec::sign3()};

}  // namespace

TEST_CASE("stem values") {
  const auto s1 = SignFunctionSpec::sign1();
  const auto s2 = SignFunctionSpec::sign2();
  const auto s3 = SignFunctionSpec::sign3();
  CHECK(stem_value(2.0 + 5i, s1) == Complex(1.0));
  CHECK(stem_value(-2.0 + 5i, s1) == Complex(-1.0));
  CHECK(stem_value(3i, s1) == Complex(1.0));  // punctured imaginary axis maps to +1
  CHECK(stem_value(-3.0, s2) == Complex(-1.0));
  CHECK(stem_value(-3.0 + 1e-3i, s2) == Complex(1.0));
  CHECK(stem_value(-3i, s2) == Complex(1.0));
  CHECK(std::abs(stem_value(-3.0 - 4i, s3) - Complex(-0.6, 0.8)) < 1e-16);
  for (const auto& s : kBuiltins) {
    CHECK(kind_of([&] { stem_value(0.0, s); }) == ErrorKind::UndefinedAtZero);
  }
}

TEST_CASE("sign kind names round-trip") {
  for (auto k : {SignKind::Sign1, SignKind::Sign2, SignKind::Sign3}) CHECK(parse_sign_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_sign_kind("sign4"), Error);
}

TEST_CASE("scalar signs") {
  const ComplexMatrix a = mat({{-3.0 - 4i}});
  CHECK(max_abs_diff(generalized_sign(a, SignFunctionSpec::sign1()).sigma, mat({{-1.0}})) == 0.0);
  CHECK(max_abs_diff(generalized_sign(a, SignFunctionSpec::sign2()).sigma, mat({{1.0}})) == 0.0);
  CHECK(max_abs_diff(generalized_sign(a, SignFunctionSpec::sign3()).sigma, mat({{-0.6 + 0.8i}})) < 1e-16);
}

TEST_CASE("negative multiple of the identity under sign2") {
  const ComplexMatrix a = mat({{-4.0, 0.0}, {0.0, -4.0}});
  CHECK(max_abs_diff(generalized_sign(a, SignFunctionSpec::sign2()).sigma, -ComplexMatrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("a defective block maps to a multiple of the identity") {
  const ComplexMatrix a = mat({{1.0, 1.0}, {0.0, 1.0}});
  for (const auto& s : kBuiltins) {
    CHECK(max_abs_diff(generalized_sign(a, s).sigma, ComplexMatrix::Identity(2, 2)) == 0.0);
  }
  const ComplexMatrix b = mat({{-2.0, 1.0, 0.0}, {0.0, -2.0, 1.0}, {0.0, 0.0, -2.0}});
  CHECK(max_abs_diff(generalized_sign(b, SignFunctionSpec::sign2()).sigma, -ComplexMatrix::Identity(3, 3)) < 1e-14);
}

TEST_CASE("sign errors") {
  CHECK(kind_of([] { generalized_sign(mat({{1.0, 0.0}, {0.0, 0.0}}), SignFunctionSpec::sign2()); }) ==
        ErrorKind::UndefinedAtZero);
  CHECK(kind_of([] { generalized_sign(mat({{1.0, 0.0}, {0.0, 2i}}), SignFunctionSpec::sign1()); }) ==
        ErrorKind::NearDiscontinuity);
  // Just off the negative real axis: membership is numerically ambiguous.
  CHECK(kind_of([] { generalized_sign(mat({{-1.0 + 1e-7i}}), SignFunctionSpec::sign2()); }) ==
        ErrorKind::NearDiscontinuity);
  CHECK(kind_of([] { generalized_sign(ComplexMatrix::Ones(2, 3), SignFunctionSpec::sign2()); }) ==
        ErrorKind::DimensionMismatch);
  // A custom stem that leaves the unit circle is not a sign function.
  const auto bad = SignFunctionSpec::custom([](Complex z) { return z; });
  CHECK(kind_of([&] { generalized_sign(mat({{2.0}}), bad); }) == ErrorKind::InvalidStem);
  // A custom stem that pushes sigma(A) A onto the negative real axis.
  const auto flip = SignFunctionSpec::custom([](Complex) { return Complex(-1.0); });
  CHECK(kind_of([&] { generalized_sign(mat({{2.0}}), flip); }) == ErrorKind::InvalidStem);
}

TEST_CASE("custom stem agreeing with sign2 gives the same result") {
  std::mt19937_64 rng(31);
  const auto custom = SignFunctionSpec::custom([](Complex z) {
    // Schur eigenvalues carry rounding-level imaginary parts.
    return (z.real() < 0 && std::abs(z.imag()) <= 1e-12 * std::abs(z)) ? Complex(-1.0) : Complex(1.0);
  });
  for (int trial = 0; trial < 10; ++trial) {
    const auto d = harness::gen_diagonalizable(5, rng());
    const ComplexMatrix x = generalized_sign(d.a, custom).sigma;
    const ComplexMatrix y = generalized_sign(d.a, SignFunctionSpec::sign2()).sigma;
    CHECK(rel(x, y) < 1e-12);
  }
}

TEST_CASE("sign matches the diagonalizable oracle") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto d = harness::gen_diagonalizable(1 + static_cast<int>(seed % 8), 1000 + seed);
    for (const auto& s : kBuiltins) {
      const ComplexMatrix expected = harness::oracle_sign_diagonalizable(d.v, d.lambdas, s);
      CHECK(rel(generalized_sign(d.a, s).sigma, expected) <= 1e-8);
    }
  }
}

TEST_CASE("sign properties: commutation, unit spectrum, no negative real eigenvalue of sigma A") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const auto d = harness::gen_diagonalizable(6, rng());
    for (const auto& s : kBuiltins) {
      const ComplexMatrix sigma = generalized_sign(d.a, s).sigma;
      CHECK(rel(sigma * d.a, d.a * sigma) <= 1e-8);
      for (const Complex z : kernels::eigenvalues(sigma)) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-8);
      for (const Complex z : kernels::eigenvalues(sigma * d.a)) {
        CHECK_FALSE((z.real() < 0 && std::abs(z.imag()) <= 1e-8 * d.a.norm()));
      }
    }
  }
}

TEST_CASE("sign1 squares to the identity") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = harness::gen_diagonalizable(7, rng());
    const ComplexMatrix sigma = generalized_sign(d.a, SignFunctionSpec::sign1()).sigma;
    CHECK(rel(sigma * sigma, ComplexMatrix::Identity(7, 7)) <= 1e-8);
  }
}

TEST_CASE("conjugation symmetry: sign of conj(A) is conj of sign(A), real in real out") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = harness::gen_diagonalizable(5, rng());
    for (const auto& s : kBuiltins) {
      const ComplexMatrix x = generalized_sign(d.a.conjugate(), s).sigma;
      const ComplexMatrix y = generalized_sign(d.a, s).sigma.conjugate();
      CHECK(rel(x, y) <= 1e-8);
    }
    // Real matrix: conjugate pairs and real eigenvalues.
    ComplexMatrix r = random_matrix(rng, 6, 6, false);
    for (const auto& s : kBuiltins) {
      try {
        const ComplexMatrix sigma = generalized_sign(r, s).sigma;
        CHECK(is_real(sigma));
      } catch (const Error& e) {
        CHECK(is_precondition_violation(e.kind()));
      }
    }
  }
}

TEST_CASE("sign preserves N-selfadjointness") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix b = random_matrix(rng, 4, 4);
    const ScalarProductSpace n(b + b.adjoint(), FormKind::Sesquilinear);
    const ComplexMatrix f = random_matrix(rng, 4, 4);
    const ComplexMatrix a = adjoint_n(f, n) * f;  // N-selfadjoint
    CHECK(rel(adjoint_n(a, n), a) < 1e-10);
    for (const auto& s : kBuiltins) {
      try {
        const ComplexMatrix sigma = generalized_sign(a, s).sigma;
        CHECK(rel(adjoint_n(sigma, n), sigma) <= 1e-8);
      } catch (const Error& e) {
        CHECK(is_precondition_violation(e.kind()));
      }
    }
  }
}

TEST_CASE("sign is independent of the Schur ordering") {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = harness::gen_diagonalizable(8, rng());
    for (const auto& s : kBuiltins) {
      const ComplexMatrix x = generalized_sign(d.a, s).sigma;
      const ComplexMatrix y = generalized_sign(d.a, s, {}, EvalOptions{rng()}).sigma;
      CHECK(rel(x, y) <= 1e-9);
    }
  }
}

TEST_CASE("defective fixtures give f(lambda) I on each Jordan block") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    for (const auto& fx : harness::jordan_fixtures(seed)) {
      for (const auto& s : kBuiltins) {
        CAPTURE(fx.name);
        CAPTURE(to_string(s.kind));
        CHECK(rel(generalized_sign(fx.a, s).sigma, fx.expected(s)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("principal square root: scalars and known matrices") {
  CHECK(max_abs_diff(principal_sqrt(mat({{4.0}})), mat({{2.0}})) == 0.0);
  CHECK(max_abs_diff(principal_sqrt(mat({{-3.0 + 4i}})), mat({{1.0 + 2i}})) < 1e-15);
  CHECK(max_abs_diff(principal_sqrt(mat({{4.0, 0.0}, {0.0, 9.0}})), mat({{2.0, 0.0}, {0.0, 3.0}})) == 0.0);
  // Jordan block: sqrt([[a, 1], [0, a]]) = [[r, 1/(2r)], [0, r]].
  CHECK(max_abs_diff(principal_sqrt(mat({{4.0, 1.0}, {0.0, 4.0}})), mat({{2.0, 0.25}, {0.0, 2.0}})) < 1e-15);
  CHECK(is_real(principal_sqrt(mat({{5.0, 1.0}, {-2.0, 3.0}}))));
}

TEST_CASE("principal square root errors") {
  CHECK(kind_of([] { principal_sqrt(mat({{-4.0}})); }) == ErrorKind::NegativeRealEigenvalue);
  CHECK(kind_of([] { principal_sqrt(mat({{1.0, 0.0}, {0.0, 0.0}})); }) == ErrorKind::UndefinedAtZero);
  CHECK(kind_of([] { principal_sqrt(ComplexMatrix::Ones(1, 2)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("principal square root recovers r-positive-definite X from X^2") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto d = harness::gen_right_half_plane(1 + static_cast<int>(seed % 8), 500 + seed);
    const ComplexMatrix x = principal_sqrt(d.a * d.a);
    CHECK(rel(x, d.a) <= 1e-8);
    CHECK(is_r_positive_definite(x));
    const ComplexMatrix y = principal_sqrt(d.a * d.a, {}, EvalOptions{seed});
    CHECK(rel(x, y) <= 1e-9);
  }
}
