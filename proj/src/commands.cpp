#include "spolar/commands.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "spolar/eigenkernels.hpp"
#include "spolar/polar.hpp"

namespace spolar::cli {

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Decompose: return "decompose";
    case Command::Sign: return "sign";
    case Command::Sqrt: return "sqrt";
    case Command::Adjoint: return "adjoint";
    case Command::Certify: return "certify";
  }
  return "unknown";
}

namespace {

io::ReportFile skeleton(const io::ProblemFile& problem, Command command) {
  io::ReportFile r;
  r.metadata.version = io::kFormatVersion;
  r.metadata.command = std::string(to_string(command));
  r.metadata.form = std::string(to_string(problem.form));
  r.metadata.sign_function = std::string(to_string(problem.sign_function));
  r.metadata.side = std::string(io::to_string(problem.side));
  r.metadata.tolerances = problem.tolerances.apply({});
  return r;
}

SignFunctionSpec spec_of(const io::ProblemFile& problem) { return {problem.sign_function, {}}; }

const ComplexMatrix& require_n(const io::ProblemFile& problem, Command command) {
  if (!problem.n) {
    throw Error(ErrorKind::SchemaError, "N: required for " + std::string(to_string(command)));
  }
  return *problem.n;
}

ProductPair pair_of(const io::ProblemFile& problem, Command command, const Tolerances& tol) {
  ScalarProductSpace n_space(require_n(problem, command), problem.form, tol);
  if (!problem.m) return ProductPair::single(n_space);
  return {ScalarProductSpace(*problem.m, problem.form, tol), n_space};
}

void add_checks(io::ReportFile& r, const CertificationReport& cert) {
  for (const auto& c : cert.checks) r.residuals.push_back({c.name, c.value, c.limit, c.passed});
}

void add_factors(io::ReportFile& r, const PolarFactors& f, const std::string& prefix) {
  r.matrices.emplace_back(prefix + "W", f.w);
  r.matrices.emplace_back(prefix + "S", f.s);
  r.matrices.emplace_back(prefix + "Sigma", f.sigma);
}

bool all_passed(const io::ReportFile& r) {
  for (const auto& x : r.residuals) {
    if (!x.passed) return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> apply_overrides(io::ProblemFile& problem, const CliConfig& config) {
  std::vector<std::string> notes;
  auto note = [&](const char* flag, std::string_view from, std::string_view to) {
    if (from != to) {
      notes.push_back(std::string(flag) + " overrides file value '" + std::string(from) + "' with '" +
                      std::string(to) + "'");
    }
  };
  if (config.form) {
    note("--form", to_string(problem.form), to_string(*config.form));
    problem.form = *config.form;
  }
  if (config.sign) {
    note("--sign", to_string(problem.sign_function), to_string(*config.sign));
    problem.sign_function = *config.sign;
  }
  if (config.side) {
    note("--side", io::to_string(problem.side), io::to_string(*config.side));
    problem.side = *config.side;
  }
  const auto& t = config.tolerances;
  auto note_tol = [&](const char* flag, const std::optional<double>& from, const std::optional<double>& to) {
    if (to && from && *from != *to) {
      notes.push_back(std::string(flag) + " overrides file value " + std::to_string(*from));
    }
  };
  note_tol("--tol-sing", problem.tolerances.tol_sing, t.tol_sing);
  note_tol("--tol-eq", problem.tolerances.tol_eq, t.tol_eq);
  note_tol("--tol-class", problem.tolerances.tol_class, t.tol_class);
  if (t.tol_sing) problem.tolerances.tol_sing = t.tol_sing;
  if (t.tol_eq) problem.tolerances.tol_eq = t.tol_eq;
  if (t.tol_class) problem.tolerances.tol_class = t.tol_class;

  // A form override can make a file inconsistent; re-check rather than guess.
  if (problem.form == FormKind::RealBilinear) {
    if (!is_real(problem.f) || (problem.n && !is_real(*problem.n)) || (problem.m && !is_real(*problem.m))) {
      throw Error(ErrorKind::InvalidForm, "real_bilinear requested but the problem has complex entries");
    }
  }
  return notes;
}

io::ReportFile run_decompose(const io::ProblemFile& problem) {
  const Tolerances tol = problem.tolerances.apply({});
  validate(tol);
  const SignFunctionSpec spec = spec_of(problem);
  const ProductPair pair = pair_of(problem, Command::Decompose, tol);
  const bool single = !problem.m;

  io::ReportFile r = skeleton(problem, Command::Decompose);
  switch (problem.side) {
    case io::SideRequest::Right: {
      const PolarFactors f = single ? right_polar_square(problem.f, pair.n_space(), spec, tol)
                                    : right_polar_rect(problem.f, pair, spec, tol);
      add_factors(r, f, "");
      add_checks(r, certify(f, problem.f, pair, tol));
      break;
    }
    case io::SideRequest::Left: {
      const PolarFactors f = single ? left_polar_square(problem.f, pair.n_space(), spec, tol)
                                    : left_polar_rect(problem.f, pair, spec, tol);
      add_factors(r, f, "");
      add_checks(r, certify(f, problem.f, pair, tol));
      break;
    }
    case io::SideRequest::Both: {
      const TwoSidedFactors f =
          single ? TwoSidedFactors{right_polar_square(problem.f, pair.n_space(), spec, tol),
                                   left_polar_square(problem.f, pair.n_space(), spec, tol)}
                 : both_polar_square_two_products(problem.f, pair, spec, tol);
      add_factors(r, f.right, "right.");
      add_factors(r, f.left, "left.");
      add_checks(r, certify(f, problem.f, pair, tol));
      break;
    }
  }
  r.pass = all_passed(r);
  if (!r.pass) r.message = "certification failed";
  return r;
}

io::ReportFile run_sign(const io::ProblemFile& problem) {
  const Tolerances tol = problem.tolerances.apply({});
  validate(tol);
  const ComplexMatrix& a = problem.f;
  const SignResult sign = generalized_sign(a, spec_of(problem), tol);

  io::ReportFile r = skeleton(problem, Command::Sign);
  r.matrices.emplace_back("Sigma", sign.sigma);
  const double commute =
      (sign.sigma * a - a * sign.sigma).norm() / std::max(1.0, a.norm() * sign.sigma.norm());
  r.residuals.push_back({"sigma_commutes_a", commute, tol.tol_eq, commute <= tol.tol_eq});
  double modulus = 0.0;
  for (const Complex z : kernels::eigenvalues(sign.sigma)) modulus = std::max(modulus, std::abs(std::abs(z) - 1.0));
  r.residuals.push_back({"sigma_unit_modulus", modulus, tol.tol_eq, modulus <= tol.tol_eq});
  r.pass = all_passed(r);
  return r;
}

io::ReportFile run_sqrt(const io::ProblemFile& problem) {
  const Tolerances tol = problem.tolerances.apply({});
  validate(tol);
  const ComplexMatrix& a = problem.f;
  const ComplexMatrix x = principal_sqrt(a, tol);

  io::ReportFile r = skeleton(problem, Command::Sqrt);
  r.matrices.emplace_back("X", x);
  const double square = relative_residual(x * x, a);
  r.residuals.push_back({"square_relation", square, tol.tol_eq, square <= tol.tol_eq});
  double lo = std::numeric_limits<double>::infinity();
  for (const Complex z : kernels::eigenvalues(x)) lo = std::min(lo, z.real());
  const double floor = tol.tol_class * x.norm();
  r.residuals.push_back({"x_min_real_eigenvalue", lo, floor, lo > floor});
  r.pass = all_passed(r);
  return r;
}

io::ReportFile run_adjoint(const io::ProblemFile& problem) {
  const Tolerances tol = problem.tolerances.apply({});
  validate(tol);
  const ProductPair pair = pair_of(problem, Command::Adjoint, tol);
  io::ReportFile r = skeleton(problem, Command::Adjoint);
  r.matrices.emplace_back("adjoint", adjoint_mn(problem.f, pair));
  const PredicateResult da = double_adjoint_holds(problem.f, pair, tol);
  r.residuals.push_back({"double_adjoint", da.residual, tol.tol_eq, da.holds});
  // The adjoint itself always exists; the double-adjoint flag is informational.
  r.pass = true;
  return r;
}

io::ReportFile run_certify(const io::ProblemFile& problem, const io::ReportFile& factors) {
  const Tolerances tol = problem.tolerances.apply({});
  validate(tol);
  const ProductPair pair = pair_of(problem, Command::Certify, tol);
  const SignFunctionSpec spec = spec_of(problem);

  auto get = [&](const std::string& name) -> const ComplexMatrix& {
    const ComplexMatrix* m = factors.matrix(name);
    if (!m) throw Error(ErrorKind::SchemaError, "matrices." + name + ": missing factor");
    return *m;
  };
  auto load = [&](const std::string& prefix, Side side) {
    return PolarFactors{get(prefix + "W"), get(prefix + "S"), get(prefix + "Sigma"), side, spec};
  };

  io::ReportFile r = skeleton(problem, Command::Certify);
  r.metadata.side = factors.metadata.side;
  const io::SideRequest side = io::parse_side(factors.metadata.side);
  if (side == io::SideRequest::Both) {
    const TwoSidedFactors f{load("right.", Side::Right), load("left.", Side::Left)};
    add_checks(r, certify(f, problem.f, pair, tol));
  } else {
    const PolarFactors f = load("", side == io::SideRequest::Right ? Side::Right : Side::Left);
    add_checks(r, certify(f, problem.f, pair, tol));
  }
  r.pass = all_passed(r);
  if (!r.pass) r.message = "factors violate a decomposition invariant";
  return r;
}

io::ReportFile precondition_report(const io::ProblemFile& problem, Command command, const Error& error) {
  io::ReportFile r = skeleton(problem, command);
  r.pass = false;
  r.message = error.what();
  return r;
}

int execute(const CliConfig& config, std::ostream& out, std::ostream& err) {
  auto emit = [&](const io::ReportFile& report) {
    if (config.output) {
      io::write_report(*config.output, report);
    } else {
      out << io::format_report(report);
    }
  };

  io::ProblemFile problem;
  try {
    problem = io::read_problem(config.input);
    for (const auto& note : apply_overrides(problem, config)) {
      if (!config.quiet) err << "note: " << note << "\n";
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitOperational;
  }

  try {
    io::ReportFile report;
    switch (config.command) {
      case Command::Decompose: report = run_decompose(problem); break;
      case Command::Sign: report = run_sign(problem); break;
      case Command::Sqrt: report = run_sqrt(problem); break;
      case Command::Adjoint: report = run_adjoint(problem); break;
      case Command::Certify: {
        if (!config.factors) throw Error(ErrorKind::SchemaError, "--factors: required for certify");
        report = run_certify(problem, io::read_report(*config.factors));
        break;
      }
    }
    emit(report);
    if (!config.quiet) {
      err << to_string(config.command) << ": " << (report.pass ? "pass" : "FAIL");
      if (!report.message.empty()) err << " (" << report.message << ")";
      err << "\n";
      if (config.verbosity > 0) {
        for (const auto& x : report.residuals) {
          err << "  " << x.name << " = " << x.value << (x.passed ? "" : "  <-- failed") << "\n";
        }
      }
    }
    if (report.pass) return kExitOk;
    return config.command == Command::Certify ? kExitPrecondition : kExitOperational;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (!is_precondition_violation(e.kind())) return kExitOperational;
    try {
      emit(precondition_report(problem, config.command, e));
    } catch (const Error& io_error) {
      err << "error: " << io_error.what() << "\n";
      return kExitOperational;
    }
    return kExitPrecondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitOperational;
  }
}

}  // namespace spolar::cli
