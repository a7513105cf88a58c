#include "spolar/harness.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "spolar/eigenkernels.hpp"
#include "spolar/polar.hpp"

namespace spolar::harness {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Identity: return "identity";
    case Family::Symmetric: return "symmetric";
    case Family::SkewSymmetric: return "skew_symmetric";
    case Family::Hermitian: return "hermitian";
    case Family::Z: return "z";
    case Family::J: return "j";
    case Family::D: return "d";
    case Family::Fixture: return "fixture";
  }
  return "unknown";
}

std::vector<Family> orthosymmetric_families(FormKind form) {
  if (form == FormKind::Sesquilinear) {
    return {Family::Identity, Family::Hermitian, Family::Z, Family::J, Family::D};
  }
  return {Family::Identity, Family::Symmetric, Family::SkewSymmetric, Family::Z, Family::J, Family::D};
}

ComplexMatrix structured_matrix(Family family, int n, int p) {
  if (n < 1) throw Error(ErrorKind::InvalidRecipe, "dimension must be positive");
  switch (family) {
    case Family::Identity: return ComplexMatrix::Identity(n, n);
    case Family::Z: return ComplexMatrix::Identity(n, n).rowwise().reverse();
    case Family::J: {
      if (n % 2 != 0) throw Error(ErrorKind::InvalidRecipe, "J needs an even dimension");
      const int h = n / 2;
      ComplexMatrix j = ComplexMatrix::Zero(n, n);
      j.topRightCorner(h, h).setIdentity();
      j.bottomLeftCorner(h, h) = -ComplexMatrix::Identity(h, h);
      return j;
    }
    case Family::D: {
      if (p < 0) p = (n + 1) / 2;
      if (p > n) throw Error(ErrorKind::InvalidRecipe, "D needs p <= n");
      ComplexMatrix d = ComplexMatrix::Identity(n, n);
      for (int i = p; i < n; ++i) d(i, i) = -1.0;
      return d;
    }
    default: throw Error(ErrorKind::InvalidRecipe, "not a structured family: " + std::string(to_string(family)));
  }
}

namespace {

using Rng = std::mt19937_64;

ComplexMatrix gaussian(Rng& rng, Eigen::Index r, Eigen::Index c, bool complex) {
  std::normal_distribution<double> g;
  ComplexMatrix a(r, c);
  // Column-major fill order is part of the reproducibility contract.
  for (Eigen::Index j = 0; j < c; ++j) {
    for (Eigen::Index i = 0; i < r; ++i) {
      const double re = g(rng);
      a(i, j) = Complex(re, complex ? g(rng) : 0.0);
    }
  }
  return a;
}

bool needs_even(Family family) { return family == Family::SkewSymmetric || family == Family::J; }

void check_family(FormKind form, Family family) {
  const bool bilinear = form != FormKind::Sesquilinear;
  if (family == Family::Hermitian && bilinear) {
    throw Error(ErrorKind::InvalidRecipe, "hermitian products are orthosymmetric only for sesquilinear forms");
  }
  if ((family == Family::Symmetric || family == Family::SkewSymmetric) && !bilinear) {
    throw Error(ErrorKind::InvalidRecipe,
                std::string(to_string(family)) + " products are orthosymmetric only for bilinear forms");
  }
}

ComplexMatrix product_matrix(Rng& rng, Family family, int k, FormKind form, bool complex,
                             std::optional<int> d_positive) {
  switch (family) {
    case Family::Symmetric: {
      const ComplexMatrix b = gaussian(rng, k, k, complex);
      return b + b.transpose();
    }
    case Family::SkewSymmetric: {
      const ComplexMatrix b = gaussian(rng, k, k, complex);
      return b - b.transpose();
    }
    case Family::Hermitian: {
      const ComplexMatrix b = gaussian(rng, k, k, complex);
      return b + b.adjoint();
    }
    case Family::D: return structured_matrix(family, k, d_positive.value_or(-1));
    default: (void)form; return structured_matrix(family, k);
  }
}

int draw_dim(Rng& rng, int lo, int hi, bool even) {
  if (even) {
    lo += lo % 2;
    if (lo < 2) lo = 2;
    if (lo > hi) throw Error(ErrorKind::InvalidRecipe, "no even dimension in the requested range");
    std::uniform_int_distribution<int> d(lo / 2, hi / 2);
    return 2 * d(rng);
  }
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng);
}

bool conditioned(const ComplexMatrix& a, double cap) { return singular_value_ratio(a) >= 1.0 / cap; }

// Spectrum of the Gram matrix must be usable by Sign1, Sign2 and Sign3
// alike: no eigenvalue near zero or the imaginary axis, on the negative real
// axis only when numerically exact, and eigenvalues either coincident or
// clearly separated.
bool well_posed_spectrum(const ComplexMatrix& gram) {
  const double s = gram.norm();
  const std::vector<Complex> ev = kernels::eigenvalues(gram);
  const double margin = 1e-3 * s;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const Complex z = ev[i];
    if (std::abs(z) < margin || std::abs(z.real()) < margin) return false;
    if (z.real() < 0.0 && std::abs(z.imag()) > 1e-10 * s && std::abs(z.imag()) < margin) return false;
    for (std::size_t j = 0; j < i; ++j) {
      const double d = std::abs(z - ev[j]);
      if (d > 1e-6 * s && d < margin) return false;
    }
  }
  return true;
}

}  // namespace

Instance gen_instance(const InstanceRecipe& recipe) {
  if (recipe.min_dim < 1 || recipe.max_dim < recipe.min_dim) {
    throw Error(ErrorKind::InvalidRecipe, "dimension bounds must satisfy 1 <= min_dim <= max_dim");
  }
  if (!(recipe.condition_cap >= 1.0)) throw Error(ErrorKind::InvalidRecipe, "condition_cap must be >= 1");
  if (recipe.shape != Shape::Square && !recipe.two_products) {
    throw Error(ErrorKind::InvalidRecipe, "rectangular instances need two products");
  }
  if (recipe.family == Family::Fixture) {
    auto all = non_orthosymmetric_fixtures();
    if (recipe.fixture_index < 0 || recipe.fixture_index >= static_cast<int>(all.size())) {
      throw Error(ErrorKind::InvalidRecipe, "fixture index out of range");
    }
    auto& fx = all[static_cast<std::size_t>(recipe.fixture_index)];
    return {std::move(fx.f), std::move(fx.pair)};
  }
  check_family(recipe.form, recipe.family);

  const bool complex = recipe.form != FormKind::RealBilinear && !recipe.real_field;
  const bool even = needs_even(recipe.family);
  Rng rng(recipe.seed);

  for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
    const int n = draw_dim(rng, recipe.min_dim, recipe.max_dim, even);
    int m = n;
    if (recipe.shape != Shape::Square) {
      // Tall: m >= n for the right decomposition; Wide: m <= n for the left one.
      m = recipe.shape == Shape::Tall ? draw_dim(rng, n, std::max(n, recipe.max_dim), even)
                                      : draw_dim(rng, std::min(n, recipe.min_dim), n, even);
    }
    const ComplexMatrix nm = product_matrix(rng, recipe.family, n, recipe.form, complex, recipe.d_positive);
    const ComplexMatrix mm = recipe.two_products
                                 ? product_matrix(rng, recipe.family, m, recipe.form, complex, recipe.d_positive)
                                 : nm;
    const ComplexMatrix f = gaussian(rng, m, n, complex);

    if (!conditioned(nm, recipe.condition_cap) || !conditioned(mm, recipe.condition_cap)) continue;
    if (!conditioned(f, recipe.condition_cap)) continue;

    const ScalarProductSpace n_space(nm, recipe.form);
    ProductPair pair = recipe.two_products ? ProductPair(ScalarProductSpace(mm, recipe.form), n_space)
                                           : ProductPair::single(n_space);
    const Side side = m >= n ? Side::Right : Side::Left;
    const ComplexMatrix gram = gram_matrix(f, pair, side);
    if (!conditioned(gram, recipe.condition_cap)) continue;
    if (!well_posed_spectrum(gram)) continue;
    if (m == n && !well_posed_spectrum(gram_matrix(f, pair, Side::Left))) continue;
    return {f, std::move(pair)};
  }
  throw Error(ErrorKind::GenerationExhausted,
              "no admissible instance after " + std::to_string(kResampleBudget) + " attempts");
}

std::vector<Fixture> non_orthosymmetric_fixtures() {
  using namespace std::complex_literals;
  const auto sesq = FormKind::Sesquilinear;
  const auto cbil = FormKind::ComplexBilinear;
  auto m2 = [](Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix x(2, 2);
    x << a, b, c, d;
    return x;
  };
  auto single = [](const ComplexMatrix& n, FormKind form) {
    return ProductPair::single(ScalarProductSpace(n, form));
  };
  const ComplexMatrix n_2i = m2(0.0, 1.0, 2.0i, 0.0);
  const ComplexMatrix n_i = m2(0.0, 1.0, 1.0i, 0.0);

  std::vector<Fixture> out;
  out.push_back({"antidiag_2i_sesquilinear_diag", m2(1.0, 0.0, 0.0, 1.0i), single(n_2i, sesq), true});
  out.push_back({"antidiag_2i_sesquilinear_antidiag", m2(0.0, 1.0, 1.0i, 0.0), single(n_2i, sesq), false});
  out.push_back({"antidiag_i_sesquilinear", m2(0.0, 1.0, 4.0i, 0.0), single(n_i, sesq), true});
  out.push_back({"antidiag_i_complex_bilinear", m2(0.0, 1.0, 4.0i, 0.0), single(n_i, cbil), false});
  out.push_back({"antidiag_2i_sesquilinear_sign3", m2(-1.0, 0.0, 0.0, 4.0i), single(n_2i, sesq), true});

  ComplexMatrix col(2, 1);
  col << 1.0, -4.0i;
  const ComplexMatrix one_plus_i = ComplexMatrix::Constant(1, 1, 1.0 + 1.0i);
  out.push_back({"column_sesquilinear", col,
                 ProductPair(ScalarProductSpace(n_i, sesq), ScalarProductSpace(one_plus_i, sesq)), true});
  out.push_back({"column_complex_bilinear", col,
                 ProductPair(ScalarProductSpace(n_i, cbil), ScalarProductSpace(one_plus_i, cbil)), false});
  out.push_back({"two_products_complex_bilinear", m2(-1.0, 0.0, 0.0, 4.0),
                 ProductPair(ScalarProductSpace(n_i, cbil), ScalarProductSpace(m2(0.0, 1.0i, -1.0, 0.0), cbil)),
                 true});
  out.push_back({"two_products_sesquilinear", m2(0.0, 1.0, 3.0i, 0.0),
                 ProductPair(ScalarProductSpace(m2(4.0i, 0.0, 0.0, 1.0), sesq),
                             ScalarProductSpace(m2(1.0, 0.0, 0.0, -2.0i), sesq)),
                 true});
  return out;
}

// ---------------------------------------------------------------------------

namespace {

ComplexMatrix well_conditioned(Rng& rng, int n, double cap) {
  for (;;) {
    ComplexMatrix v = gaussian(rng, n, n, true);
    if (conditioned(v, cap)) return v;
  }
}

double distance_to_negative_axis(Complex z) {
  return z.real() < 0.0 ? std::abs(z.imag()) : std::abs(z);
}

}  // namespace

Diagonalizable gen_diagonalizable(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::InvalidRecipe, "dimension must be positive");
  Rng rng(seed);
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::bernoulli_distribution on_axis(0.2);

  std::vector<Complex> lambdas;
  int guard = 0;
  while (static_cast<int>(lambdas.size()) < n) {
    if (++guard > kResampleBudget * n) {
      throw Error(ErrorKind::GenerationExhausted, "could not place separated eigenvalues");
    }
    // Some eigenvalues land exactly on the negative real axis, where Sign2
    // must return -1 rather than treat the point as ambiguous.
    const Complex z = on_axis(rng) ? Complex(-radius(rng), 0.0) : std::polar(radius(rng), angle(rng));
    if (std::abs(z.real()) < 0.1) continue;
    if (z.imag() != 0.0 && distance_to_negative_axis(z) < 0.1) continue;
    const bool close = std::any_of(lambdas.begin(), lambdas.end(), [&](Complex w) { return std::abs(z - w) < 0.1; });
    if (close) continue;
    lambdas.push_back(z);
  }
  const ComplexMatrix v = well_conditioned(rng, n, 100.0);
  Eigen::VectorXcd d(n);
  for (int i = 0; i < n; ++i) d(i) = lambdas[static_cast<std::size_t>(i)];
  const ComplexMatrix a = v * d.asDiagonal() * v.inverse();
  return {a, v, lambdas};
}

Diagonalizable gen_right_half_plane(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::InvalidRecipe, "dimension must be positive");
  Rng rng(seed);
  std::uniform_real_distribution<double> re(0.2, 2.0);
  std::uniform_real_distribution<double> im(-2.0, 2.0);
  std::vector<Complex> mu(static_cast<std::size_t>(n));
  for (auto& z : mu) z = Complex(re(rng), im(rng));
  const ComplexMatrix v = well_conditioned(rng, n, 100.0);
  Eigen::VectorXcd d(n);
  for (int i = 0; i < n; ++i) d(i) = mu[static_cast<std::size_t>(i)];
  return {v * d.asDiagonal() * v.inverse(), v, mu};
}

ComplexMatrix oracle_sign_diagonalizable(const ComplexMatrix& v, std::span<const Complex> lambdas,
                                         const SignFunctionSpec& spec) {
  Eigen::VectorXcd d(static_cast<Eigen::Index>(lambdas.size()));
  for (std::size_t i = 0; i < lambdas.size(); ++i) d(static_cast<Eigen::Index>(i)) = stem_value(lambdas[i], spec);
  return v * d.asDiagonal() * v.inverse();
}

ClassicalPolar oracle_classical_polar(const ComplexMatrix& f, double tol_sing) {
  const ComplexMatrix g = f.adjoint() * f;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::SingularGram, "Hermitian eigensolver failed");
  const Eigen::VectorXd ev = es.eigenvalues();
  if (ev.size() == 0 || ev.minCoeff() <= tol_sing * ev.maxCoeff()) {
    throw Error(ErrorKind::SingularGram, "F^* F is singular");
  }
  const Eigen::VectorXcd root = ev.cwiseSqrt().cast<Complex>();
  const ComplexMatrix s = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
  const Eigen::VectorXcd inv_root = root.cwiseInverse();
  const ComplexMatrix u = f * (es.eigenvectors() * inv_root.asDiagonal() * es.eigenvectors().adjoint());
  return {u, s};
}

ComplexMatrix JordanFixture::expected(const SignFunctionSpec& spec) const {
  Eigen::VectorXcd d(a.rows());
  Eigen::Index k = 0;
  for (const auto& [lambda, size] : blocks) {
    const Complex c = stem_value(lambda, spec);
    for (int i = 0; i < size; ++i) d(k++) = c;
  }
  return v * d.asDiagonal() * v.inverse();
}

std::vector<JordanFixture> jordan_fixtures(std::uint64_t seed) {
  using namespace std::complex_literals;
  Rng rng(seed);
  auto build = [&](std::string name, std::vector<std::pair<Complex, int>> blocks, bool real) {
    int n = 0;
    for (const auto& b : blocks) n += b.second;
    ComplexMatrix j = ComplexMatrix::Zero(n, n);
    int k = 0;
    for (const auto& [lambda, size] : blocks) {
      for (int i = 0; i < size; ++i) {
        j(k + i, k + i) = lambda;
        if (i + 1 < size) j(k + i, k + i + 1) = 1.0;
      }
      k += size;
    }
    ComplexMatrix v;
    do {
      v = ComplexMatrix::Identity(n, n) + 0.3 * gaussian(rng, n, n, !real);
    } while (!conditioned(v, 10.0));
    ComplexMatrix a = v * j * v.inverse();
    if (real) a = a.real().cast<Complex>();
    return JordanFixture{std::move(name), std::move(a), std::move(v), std::move(blocks)};
  };

  std::vector<JordanFixture> out;
  out.push_back(build("jordan2_positive", {{1.0, 2}}, true));
  out.push_back(build("jordan3_negative_real", {{-2.0, 3}}, true));
  out.push_back(build("jordan2_negative_plus_simple", {{-1.0, 2}, {3.0, 1}}, true));
  out.push_back(build("jordan3_complex", {{1.5 + 0.5i, 3}}, false));
  out.push_back(build("jordan2_pair_complex", {{-1.0 + 2.0i, 2}, {2.0 - 1.0i, 2}}, false));
  out.push_back(build("jordan3_left_half_plane", {{-0.5 - 1.5i, 3}, {-3.0, 1}}, false));
  return out;
}

}  // namespace spolar::harness
