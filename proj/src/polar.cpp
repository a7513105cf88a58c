#include "spolar/polar.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "spolar/eigenkernels.hpp"

namespace spolar {

std::string_view to_string(Side side) { return side == Side::Right ? "right" : "left"; }

ComplexMatrix gram_matrix(const ComplexMatrix& f, const ProductPair& pair, Side side) {
  const ComplexMatrix adj = adjoint_mn(f, pair);
  return side == Side::Right ? ComplexMatrix(adj * f) : ComplexMatrix(f * adj);
}

namespace {

// X S^{-1} without forming the inverse.
ComplexMatrix solve_right(const ComplexMatrix& x, const ComplexMatrix& s) {
  return s.transpose().partialPivLu().solve(x.transpose()).transpose();
}

void check_operand(const ComplexMatrix& f, const ProductPair& pair) {
  if (f.rows() != pair.m() || f.cols() != pair.n()) {
    throw Error(ErrorKind::DimensionMismatch, "F must be m x n for the pair (M, N)");
  }
  require_finite(f, "F");
  if (pair.form() == FormKind::RealBilinear && !is_real(f)) {
    throw Error(ErrorKind::InvalidForm, "real_bilinear: F has nonzero imaginary part");
  }
}

void check_nonsingular_square(const ComplexMatrix& f, const Tolerances& tol) {
  if (f.rows() != f.cols()) throw Error(ErrorKind::DimensionMismatch, "F must be square");
  const double ratio = singular_value_ratio(f);
  if (!(ratio > tol.tol_sing)) throw Error(ErrorKind::SingularInput, "F must be nonsingular", ratio);
}

void check_double_adjoint(const ComplexMatrix& f, const ProductPair& pair, const Tolerances& tol) {
  const PredicateResult da = double_adjoint_holds(f, pair, tol);
  if (!da) throw Error(ErrorKind::DoubleAdjointViolation, "(F^[M,N])^[N,M] = F", da.residual);
}

PolarFactors decompose(const ComplexMatrix& f, const ProductPair& pair, Side side,
                       const SignFunctionSpec& spec, const Tolerances& tol, const EvalOptions& opts) {
  validate(tol);
  const ComplexMatrix gram = gram_matrix(f, pair, side);
  const double ratio = singular_value_ratio(gram);
  if (!(ratio > tol.tol_sing)) {
    throw Error(ErrorKind::SingularGram,
                side == Side::Right ? "F^[M,N] F must be nonsingular" : "F F^[M,N] must be nonsingular",
                ratio);
  }

  PolarFactors out;
  out.side = side;
  out.spec = spec;
  out.sigma = generalized_sign(gram, spec, tol, opts).sigma;
  out.s = principal_sqrt(out.sigma * gram, tol, opts);
  out.w = side == Side::Right ? solve_right(f, out.s) : ComplexMatrix(out.s.partialPivLu().solve(f));
  return out;
}

}  // namespace

PolarFactors right_polar_square(const ComplexMatrix& f, const ScalarProductSpace& space,
                                const SignFunctionSpec& spec, const Tolerances& tol,
                                const EvalOptions& opts) {
  const ProductPair pair = ProductPair::single(space);
  check_operand(f, pair);
  check_nonsingular_square(f, tol);
  check_double_adjoint(f, pair, tol);
  return decompose(f, pair, Side::Right, spec, tol, opts);
}

PolarFactors left_polar_square(const ComplexMatrix& f, const ScalarProductSpace& space,
                               const SignFunctionSpec& spec, const Tolerances& tol,
                               const EvalOptions& opts) {
  const ProductPair pair = ProductPair::single(space);
  check_operand(f, pair);
  check_nonsingular_square(f, tol);
  check_double_adjoint(f, pair, tol);
  return decompose(f, pair, Side::Left, spec, tol, opts);
}

PolarFactors right_polar_rect(const ComplexMatrix& f, const ProductPair& pair,
                              const SignFunctionSpec& spec, const Tolerances& tol,
                              const EvalOptions& opts) {
  check_operand(f, pair);
  if (f.rows() < f.cols()) throw Error(ErrorKind::DimensionMismatch, "right decomposition needs m >= n");
  check_double_adjoint(f, pair, tol);
  return decompose(f, pair, Side::Right, spec, tol, opts);
}

PolarFactors left_polar_rect(const ComplexMatrix& f, const ProductPair& pair,
                             const SignFunctionSpec& spec, const Tolerances& tol,
                             const EvalOptions& opts) {
  check_operand(f, pair);
  if (f.rows() > f.cols()) throw Error(ErrorKind::DimensionMismatch, "left decomposition needs m <= n");
  check_double_adjoint(f, pair, tol);
  return decompose(f, pair, Side::Left, spec, tol, opts);
}

TwoSidedFactors both_polar_square_two_products(const ComplexMatrix& f, const ProductPair& pair,
                                               const SignFunctionSpec& spec, const Tolerances& tol,
                                               const EvalOptions& opts) {
  check_operand(f, pair);
  check_nonsingular_square(f, tol);
  check_double_adjoint(f, pair, tol);
  return {decompose(f, pair, Side::Right, spec, tol, opts),
          decompose(f, pair, Side::Left, spec, tol, opts)};
}

// ---------------------------------------------------------------------------

bool CertificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const CertificationCheck* CertificationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

double CertificationReport::max_residual(std::string_view prefix) const {
  double worst = 0.0;
  for (const auto& c : checks) {
    if (c.lower_bound || !c.name.starts_with(prefix)) continue;
    worst = std::max(worst, c.value);
  }
  return worst;
}

namespace {

constexpr double kUnevaluated = std::numeric_limits<double>::infinity();

class ReportBuilder {
 public:
  explicit ReportBuilder(std::string prefix) : prefix_(std::move(prefix)) {}

  void upper(const std::string& name, double limit, const std::function<double()>& eval) {
    add(name, limit, false, eval);
  }
  void lower(const std::string& name, const std::function<double()>& eval_limit,
             const std::function<double()>& eval) {
    double limit = 0.0;
    try {
      limit = eval_limit();
    } catch (const std::exception&) {
      limit = kUnevaluated;
    }
    add(name, limit, true, eval);
  }

  void append_to(CertificationReport& report) {
    for (auto& c : checks_) report.checks.push_back(std::move(c));
  }

 private:
  void add(const std::string& name, double limit, bool lower, const std::function<double()>& eval) {
    double value = lower ? -kUnevaluated : kUnevaluated;
    try {
      value = eval();
    } catch (const std::exception&) {
    }
    const bool ok = std::isfinite(value) && (lower ? value > limit : value <= limit);
    checks_.push_back({prefix_ + name, value, limit, lower, ok});
  }

  std::string prefix_;
  std::vector<CertificationCheck> checks_;
};

double orthonormal_residual(const ComplexMatrix& product) {
  const auto k = product.rows();
  return (product - ComplexMatrix::Identity(k, k)).norm() / static_cast<double>(k);
}

void certify_side(const PolarFactors& fac, const ComplexMatrix& f, const ProductPair& pair,
                  const Tolerances& tol, ReportBuilder& b) {
  const FormKind form = pair.form();
  const ComplexMatrix& m = pair.m_space().matrix();
  const ComplexMatrix& n = pair.n_space().matrix();
  const bool right = fac.side == Side::Right;
  const ComplexMatrix& home = right ? n : m;

  b.upper("reconstruction", tol.tol_eq, [&] {
    const ComplexMatrix product = right ? ComplexMatrix(fac.w * fac.s) : ComplexMatrix(fac.s * fac.w);
    return relative_residual(product, f);
  });
  b.lower(
      "s_min_real_eigenvalue", [&] { return tol.tol_class * fac.s.norm(); },
      [&] {
        double lo = std::numeric_limits<double>::infinity();
        for (const Complex z : kernels::eigenvalues(fac.s)) lo = std::min(lo, z.real());
        return lo;
      });
  b.upper("s_selfadjoint", tol.tol_eq,
          [&] { return relative_residual(adjoint_raw(fac.s, home, home, form), fac.s); });
  b.upper("s_twisted_selfadjoint", tol.tol_eq, [&] {
    const ComplexMatrix twisted = home * fac.sigma;
    return relative_residual(adjoint_raw(fac.s, twisted, twisted, form), fac.s);
  });
  b.upper("w_orthonormal", tol.tol_eq, [&] {
    if (right) {
      // (M, N Sigma^{-1})-orthonormal columns.
      const ComplexMatrix n_twisted = solve_right(n, fac.sigma);
      return orthonormal_residual(adjoint_raw(fac.w, m, n_twisted, form) * fac.w);
    }
    // (M Sigma, N)-orthonormal rows.
    const ComplexMatrix m_twisted = m * fac.sigma;
    return orthonormal_residual(fac.w * adjoint_raw(fac.w, m_twisted, n, form));
  });
  b.upper("w_double_adjoint", tol.tol_eq, [&] {
    return relative_residual(adjoint_raw(adjoint_raw(fac.w, m, n, form), n, m, form), fac.w);
  });
  b.upper("sigma_commutes_s", tol.tol_eq, [&] {
    return (fac.sigma * fac.s - fac.s * fac.sigma).norm() /
           std::max(1.0, fac.sigma.norm() * fac.s.norm());
  });

  const ComplexMatrix gram = gram_matrix(f, pair, fac.side);
  b.upper("square_relation", tol.tol_eq,
          [&] { return relative_residual(fac.s * fac.s, fac.sigma * gram); });
  b.upper("sigma_is_sign_of_gram", tol.tol_eq,
          [&] { return relative_residual(fac.sigma, generalized_sign(gram, fac.spec, tol).sigma); });

  if (pair.is_single() && fac.w.rows() == fac.w.cols()) {
    b.upper("det_w", kDeterminantTolerance, [&] {
      const Complex d = fac.w.partialPivLu().determinant();
      if (form == FormKind::RealBilinear) return std::min(std::abs(d - 1.0), std::abs(d + 1.0));
      return std::abs(std::abs(d) - 1.0);
    });
    b.upper("det_sigma", kDeterminantTolerance, [&] {
      const Complex d = fac.sigma.partialPivLu().determinant();
      if (form == FormKind::ComplexBilinear) return std::abs(std::abs(d) - 1.0);
      return std::abs(d - 1.0);
    });
  }
}

}  // namespace

CertificationReport certify(const PolarFactors& factors, const ComplexMatrix& f,
                            const ProductPair& pair, const Tolerances& tol) {
  CertificationReport report;
  ReportBuilder b("");
  certify_side(factors, f, pair, tol, b);
  b.append_to(report);
  return report;
}

CertificationReport certify(const PolarFactors& factors, const ComplexMatrix& f,
                            const ScalarProductSpace& space, const Tolerances& tol) {
  return certify(factors, f, ProductPair::single(space), tol);
}

CertificationReport certify(const TwoSidedFactors& factors, const ComplexMatrix& f,
                            const ProductPair& pair, const Tolerances& tol) {
  CertificationReport report;
  ReportBuilder right("right.");
  certify_side(factors.right, f, pair, tol, right);
  right.append_to(report);
  ReportBuilder left("left.");
  certify_side(factors.left, f, pair, tol, left);
  left.append_to(report);

  const PolarFactors& r = factors.right;
  const PolarFactors& l = factors.left;
  ReportBuilder cross("pair.");
  cross.upper("w_agreement", tol.tol_eq, [&] { return relative_residual(l.w, r.w); });
  cross.upper("s_similarity", tol.tol_eq,
              [&] { return relative_residual(solve_right(r.w * r.s, r.w), l.s); });
  cross.upper("sigma_similarity", tol.tol_eq,
              [&] { return relative_residual(solve_right(r.w * r.sigma, r.w), l.sigma); });
  cross.append_to(report);
  return report;
}

}  // namespace spolar
