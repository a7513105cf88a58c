#pragma once

// Expected factors for the corpus/ problem files, worked by hand.

#include <cmath>
#include <string>
#include <vector>

#include "test_util.hpp"

namespace spolar::test {

struct GoldenMatrix {
  std::string name;  // report matrix name
  ComplexMatrix value;
};

struct GoldenCase {
  std::string file;   // under corpus/
  int exit_code = 0;  // decompose
  std::vector<GoldenMatrix> expected;
};

inline std::vector<GoldenCase> golden_cases() {
  const double r5 = std::sqrt(5.0);
  const double r2 = std::sqrt(2.0);
  const Complex w8 = std::polar(1.0, M_PI / 4.0);  // e^{i pi/4}
  const ComplexMatrix two = mat({{2.0, 0.0}, {0.0, 2.0}});
  return {
      {"scalar_complex_bilinear_sign1", 0, {{"W", mat({{1i}})}, {"S", mat({{2.0 + 1i}})}, {"Sigma", mat({{-1.0}})}}},
      {"scalar_sesquilinear_sign1",
       0,
       {{"W", mat({{(-1.0 + 2i) / r5}})}, {"S", mat({{r5}})}, {"Sigma", mat({{1.0}})}}},
      {"scalar_complex_bilinear_sign2", 0, {{"W", mat({{-1.0}})}, {"S", mat({{1.0 - 2i}})}, {"Sigma", mat({{1.0}})}}},
      {"scalar_complex_bilinear_sign3",
       0,
       {{"W", mat({{(-1.0 + 2i) / r5}})}, {"S", mat({{r5}})}, {"Sigma", mat({{(-3.0 + 4i) / 5.0}})}}},
      {"indefinite_real_bilinear_sign2",
       0,
       {{"W", mat({{0.0, 2.0}, {0.5, 0.0}})}, {"S", two}, {"Sigma", mat({{-1.0, 0.0}, {0.0, -1.0}})}}},
      {"symplectic_sesquilinear_sign2",
       0,
       {{"W", mat({{0.5i, 0.0}, {0.0, -2i}})}, {"S", two}, {"Sigma", mat({{-1.0, 0.0}, {0.0, -1.0}})}}},
      {"nonorthosymmetric_sesquilinear_sign3",
       0,
       {{"right.W", mat({{-0.5, 0.0}, {0.0, 2i}})},
        {"right.S", two},
        {"right.Sigma", mat({{-1i, 0.0}, {0.0, 1i}})},
        {"left.W", mat({{-0.5, 0.0}, {0.0, 2i}})},
        {"left.S", two}}},
      {"rect_column_sesquilinear_sign3",
       0,
       {{"W", mat({{0.5}, {-2i}})}, {"S", mat({{2.0}})}, {"Sigma", mat({{-1.0}})}}},
      {"rect_column_complex_bilinear_sign3", 2, {}},
      {"two_products_complex_bilinear_sign3",
       0,
       {{"W", mat({{-0.5, 0.0}, {0.0, 2.0}})}, {"S", two}, {"Sigma", mat({{-1i, 0.0}, {0.0, -1i}})}}},
      {"two_products_sesquilinear_sign2",
       0,
       {{"right.W", mat({{0.0, 1.0 / r2}, {1i, 0.0}})},
        {"right.S", mat({{3.0, 0.0}, {0.0, r2}})},
        {"right.Sigma", mat({{1.0, 0.0}, {0.0, -1.0}})},
        {"left.W", mat({{0.0, 1.0 / r2}, {1i, 0.0}})},
        {"left.S", mat({{r2, 0.0}, {0.0, 3.0}})}}},
      // Derived by hand: F^[N] F = diag(-i, i) has no negative real eigenvalue, so Sigma = I.
      {"double_adjoint_accepted_diag_sesquilinear",
       0,
       {{"W", mat({{w8, 0.0}, {0.0, w8}})},
        {"S", mat({{std::conj(w8), 0.0}, {0.0, w8}})},
        {"Sigma", mat({{1.0, 0.0}, {0.0, 1.0}})}}},
      {"double_adjoint_rejected_antidiag_sesquilinear", 2, {}},
      // Derived by hand: F^[N] F = 4 I.
      {"double_adjoint_accepted_sesquilinear",
       0,
       {{"W", mat({{0.0, 0.5}, {2i, 0.0}})}, {"S", two}, {"Sigma", mat({{1.0, 0.0}, {0.0, 1.0}})}}},
      {"double_adjoint_rejected_complex_bilinear", 2, {}},
  };
}

}  // namespace spolar::test
