#include "spolar/matfunc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spolar/eigenkernels.hpp"

namespace spolar {

std::string_view to_string(SignKind kind) {
  switch (kind) {
    case SignKind::Sign1: return "sign1";
    case SignKind::Sign2: return "sign2";
    case SignKind::Sign3: return "sign3";
    case SignKind::Custom: return "custom";
  }
  return "unknown";
}

SignKind parse_sign_kind(std::string_view name) {
  if (name == "sign1") return SignKind::Sign1;
  if (name == "sign2") return SignKind::Sign2;
  if (name == "sign3") return SignKind::Sign3;
  throw Error(ErrorKind::SchemaError,
              "sign_function: expected sign1|sign2|sign3, got '" + std::string(name) + "'");
}

Complex stem_value(Complex lambda, const SignFunctionSpec& spec) {
  if (lambda == Complex(0.0)) throw Error(ErrorKind::UndefinedAtZero, "stem undefined at 0");
  switch (spec.kind) {
    case SignKind::Sign1:
      return lambda.real() < 0.0 ? -1.0 : 1.0;
    case SignKind::Sign2:
      return (lambda.real() < 0.0 && lambda.imag() == 0.0) ? -1.0 : 1.0;
    case SignKind::Sign3:
      return std::conj(lambda) / std::abs(lambda);
    case SignKind::Custom:
      if (!spec.custom_stem) throw Error(ErrorKind::InvalidStem, "custom stem is empty");
      return spec.custom_stem(lambda);
  }
  return 1.0;
}

namespace {

constexpr double kSign2AmbiguityFactor = 100.0;

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": matrix must be square and non-empty");
  }
  require_finite(a, what);
}

double discontinuity_distance(Complex z, SignKind kind) {
  switch (kind) {
    case SignKind::Sign1:
      return std::min(std::abs(z.real()), std::abs(z));
    case SignKind::Sign2:
      return z.real() < 0.0 ? std::abs(z.imag()) : std::abs(z);
    default:
      return std::abs(z);
  }
}

// Stem value of a numerically distinct eigenvalue (or cluster mean) with the
// tolerance policy applied.
Complex classify(Complex z, const SignFunctionSpec& spec, double band) {
  if (std::abs(z) <= band) {
    throw Error(ErrorKind::UndefinedAtZero, "eigenvalue within tol_class of 0", std::abs(z));
  }
  switch (spec.kind) {
    case SignKind::Sign1:
      if (std::abs(z.real()) <= band) {
        throw Error(ErrorKind::NearDiscontinuity, "sign1: eigenvalue on the imaginary axis",
                    std::abs(z.real()));
      }
      return z.real() > 0.0 ? 1.0 : -1.0;
    case SignKind::Sign2:
      if (z.real() < 0.0) {
        const double off = std::abs(z.imag());
        if (off <= band) return -1.0;
        if (off <= kSign2AmbiguityFactor * band) {
          throw Error(ErrorKind::NearDiscontinuity,
                      "sign2: negative-real-axis membership ambiguous", off);
        }
      }
      return 1.0;
    case SignKind::Sign3:
      return std::conj(z) / std::abs(z);
    case SignKind::Custom:
      return stem_value(z, spec);
  }
  return 1.0;
}

struct Grouping {
  std::vector<int> group_of;    // per diagonal position
  std::vector<Complex> mean;    // per group
};

// Connected components of eigenvalues closer than `radius`.
Grouping group_close(const Eigen::VectorXcd& d, double radius) {
  const auto n = static_cast<int>(d.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(d(i) - d(j)) <= radius) parent[find(j)] = find(i);
    }
  }
  Grouping g;
  g.group_of.assign(n, -1);
  std::vector<int> root_to_group(n, -1);
  std::vector<int> count;
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (root_to_group[r] < 0) {
      root_to_group[r] = static_cast<int>(g.mean.size());
      g.mean.push_back(0.0);
      count.push_back(0);
    }
    const int k = root_to_group[r];
    g.group_of[i] = k;
    g.mean[k] += d(i);
    ++count[k];
  }
  for (std::size_t k = 0; k < g.mean.size(); ++k) g.mean[k] /= static_cast<double>(count[k]);
  return g;
}

kernels::SchurForm schur_for(const ComplexMatrix& a, const Tolerances& tol, const EvalOptions& opts) {
  kernels::SchurForm form = kernels::schur(a);
  if (opts.schur_shuffle_seed) form = kernels::shuffle(form, *opts.schur_shuffle_seed, tol);
  return form;
}

}  // namespace

SignResult generalized_sign(const ComplexMatrix& a, const SignFunctionSpec& spec,
                            const Tolerances& tol, const EvalOptions& opts) {
  require_square(a, "generalized_sign");
  if (spec.kind == SignKind::Custom && !spec.custom_stem) {
    throw Error(ErrorKind::InvalidStem, "custom stem is empty");
  }
  const double scale = a.norm();
  const double band = tol.tol_class * scale;
  const double merge_radius = std::sqrt(tol.tol_class) * scale;

  kernels::SchurForm form = schur_for(a, tol, opts);
  const Eigen::VectorXcd diag = form.t.diagonal();
  const auto n = static_cast<int>(diag.size());
  for (int i = 0; i < n; ++i) {
    if (std::abs(diag(i)) <= band) {
      throw Error(ErrorKind::UndefinedAtZero, "eigenvalue within tol_class of 0", std::abs(diag(i)));
    }
  }

  const Grouping groups = group_close(diag, merge_radius);
  std::vector<Complex> group_stem;
  for (const Complex z : groups.mean) {
    const Complex c = classify(z, spec, band);
    if (spec.kind == SignKind::Custom) {
      if (std::abs(std::abs(c) - 1.0) > tol.tol_eq) {
        throw Error(ErrorKind::InvalidStem, "custom stem value off the unit circle",
                    std::abs(std::abs(c) - 1.0));
      }
      const Complex mirrored = stem_value(std::conj(z), spec);
      if (std::abs(mirrored - std::conj(c)) > tol.tol_eq) {
        throw Error(ErrorKind::InvalidStem, "custom stem does not respect conjugation",
                    std::abs(mirrored - std::conj(c)));
      }
    }
    // Eigenvalues of sigma(A) A are stem * lambda; none may be negative real.
    const Complex product = c * z;
    if (product.real() < 0.0 && std::abs(product.imag()) <= band) {
      throw Error(ErrorKind::InvalidStem, "sigma(A) A has a negative real eigenvalue",
                  std::abs(product.imag()));
    }
    group_stem.push_back(c);
  }

  // Clusters: groups with identical stem values.
  std::vector<Complex> cluster_stem;
  std::vector<int> cluster_of(n);
  for (int i = 0; i < n; ++i) {
    const Complex c = group_stem[groups.group_of[i]];
    auto it = std::find(cluster_stem.begin(), cluster_stem.end(), c);
    if (it == cluster_stem.end()) {
      cluster_of[i] = static_cast<int>(cluster_stem.size());
      cluster_stem.push_back(c);
    } else {
      cluster_of[i] = static_cast<int>(it - cluster_stem.begin());
    }
  }

  SignResult result;
  std::vector<Complex> sorted_values;
  std::vector<Complex> sorted_stems;
  {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return cluster_of[x] < cluster_of[y]; });
    for (int i : order) {
      sorted_values.push_back(diag(i));
      sorted_stems.push_back(cluster_stem[cluster_of[i]]);
    }
  }
  if (cluster_stem.size() > 1) form = kernels::reorder(form, cluster_of, tol);
  std::vector<int> sorted_ids(cluster_of);
  std::stable_sort(sorted_ids.begin(), sorted_ids.end());

  // Block ranges along the reordered diagonal.
  std::vector<Eigen::Index> start{0};
  for (int i = 1; i < n; ++i) {
    if (sorted_ids[i] != sorted_ids[i - 1]) start.push_back(i);
  }
  start.push_back(n);
  const auto blocks = static_cast<int>(start.size()) - 1;
  auto len = [&](int b) { return start[b + 1] - start[b]; };

  const ComplexMatrix& t = form.t;
  ComplexMatrix f = ComplexMatrix::Zero(n, n);
  for (int b = 0; b < blocks; ++b) {
    f.block(start[b], start[b], len(b), len(b)) =
        cluster_stem[sorted_ids[start[b]]] * ComplexMatrix::Identity(len(b), len(b));
  }
  // Parlett block recurrence: T_ii F_ij - F_ij T_jj =
  //   F_ii T_ij - T_ij F_jj + sum_{i<k<j} (F_ik T_kj - T_ik F_kj).
  for (int j = 1; j < blocks; ++j) {
    for (int i = j - 1; i >= 0; --i) {
      const auto ri = start[i], rj = start[j];
      const Complex ci = f(ri, ri), cj = f(rj, rj);
      ComplexMatrix rhs = (ci - cj) * t.block(ri, rj, len(i), len(j));
      for (int k = i + 1; k < j; ++k) {
        const auto rk = start[k];
        rhs += f.block(ri, rk, len(i), len(k)) * t.block(rk, rj, len(k), len(j)) -
               t.block(ri, rk, len(i), len(k)) * f.block(rk, rj, len(k), len(j));
      }
      f.block(ri, rj, len(i), len(j)) = kernels::sylvester_triangular(
          t.block(ri, ri, len(i), len(i)), t.block(rj, rj, len(j), len(j)), rhs, tol);
    }
  }

  // A single cluster means sigma(A) = c I exactly; skip the rounding of Q Q^*.
  result.sigma = blocks == 1 ? ComplexMatrix(cluster_stem[0] * ComplexMatrix::Identity(n, n))
                             : ComplexMatrix(form.q * f * form.q.adjoint());
  if (is_real(a)) result.sigma = result.sigma.real().cast<Complex>();

  result.classification.reserve(n);
  for (int i = 0; i < n; ++i) {
    result.classification.push_back(
        {sorted_values[i], sorted_stems[i], discontinuity_distance(sorted_values[i], spec.kind)});
  }
  return result;
}

ComplexMatrix principal_sqrt(const ComplexMatrix& a, const Tolerances& tol, const EvalOptions& opts) {
  require_square(a, "principal_sqrt");
  const double band = tol.tol_class * a.norm();
  const kernels::SchurForm form = schur_for(a, tol, opts);
  const ComplexMatrix& t = form.t;
  const Eigen::Index n = t.rows();

  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex z = t(i, i);
    if (std::abs(z) <= band) {
      throw Error(ErrorKind::UndefinedAtZero, "eigenvalue within tol_class of 0", std::abs(z));
    }
    if (z.real() < 0.0 && std::abs(z.imag()) <= band) {
      throw Error(ErrorKind::NegativeRealEigenvalue, "eigenvalue on the closed negative real axis",
                  std::abs(z.imag()));
    }
  }

  ComplexMatrix r = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    r(j, j) = std::sqrt(t(j, j));
    for (Eigen::Index i = j - 1; i >= 0; --i) {
      Complex acc = t(i, j);
      for (Eigen::Index k = i + 1; k < j; ++k) acc -= r(i, k) * r(k, j);
      r(i, j) = acc / (r(i, i) + r(j, j));
    }
  }

  ComplexMatrix x = form.q * r * form.q.adjoint();
  if (is_real(a)) x = x.real().cast<Complex>();
  return x;
}

}  // namespace spolar
