#pragma once

#include <complex>
#include <initializer_list>
#include <random>

#include "spolar/core.hpp"

namespace spolar::test {

using namespace std::complex_literals;

inline ComplexMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  ComplexMatrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const Complex z : row) a(i, j++) = z;
    ++i;
  }
  return a;
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c, bool complex = true) {
  std::normal_distribution<double> g;
  ComplexMatrix a(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) {
      const double re = g(rng);
      a(i, j) = Complex(re, complex ? g(rng) : 0.0);
    }
  }
  return a;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  return (a - b).cwiseAbs().maxCoeff();
}

inline double rel(const ComplexMatrix& a, const ComplexMatrix& b) { return relative_residual(a, b); }

}  // namespace spolar::test
