// spolar: polar decompositions in scalar product spaces.
//
//   spolar decompose problem.json [--side both] [--output report.json]
//   spolar sign problem.json --sign sign3
//   spolar certify problem.json --factors report.json
//
// Every flag can also be set through an environment variable SPOLAR_<FLAG>
// (e.g. SPOLAR_TOL_EQ); command-line flags win over the environment, and both
// win over values stored in the problem file.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "spolar/commands.hpp"

namespace {

using spolar::cli::CliConfig;
using spolar::cli::Command;

struct RawFlags {
  std::string form, sign, side;
  double tol_eq = 0, tol_class = 0, tol_sing = 0;
};

void add_common(CLI::App* sub, CliConfig& config, RawFlags& raw) {
  sub->add_option("input", config.input, "Problem file (JSON)")->required();
  sub->add_option("-o,--output", config.output, "Write the report here instead of stdout")
      ->envname("SPOLAR_OUTPUT");
  sub->add_option("--form", raw.form, "Override form: real_bilinear|complex_bilinear|sesquilinear")
      ->check(CLI::IsMember({"real_bilinear", "complex_bilinear", "sesquilinear"}))
      ->envname("SPOLAR_FORM");
  sub->add_option("--sign", raw.sign, "Override sign function: sign1|sign2|sign3")
      ->check(CLI::IsMember({"sign1", "sign2", "sign3"}))
      ->envname("SPOLAR_SIGN");
  sub->add_option("--side", raw.side, "Override side: right|left|both")
      ->check(CLI::IsMember({"right", "left", "both"}))
      ->envname("SPOLAR_SIDE");
  sub->add_option("--tol-eq", raw.tol_eq, "Relative residual tolerance (default 1e-8)")
      ->check(CLI::PositiveNumber)
      ->envname("SPOLAR_TOL_EQ");
  sub->add_option("--tol-class", raw.tol_class, "Eigenvalue classification band (default 1e-8)")
      ->check(CLI::PositiveNumber)
      ->envname("SPOLAR_TOL_CLASS");
  sub->add_option("--tol-sing", raw.tol_sing, "Singular-value ratio cutoff (default 1e-12)")
      ->check(CLI::PositiveNumber)
      ->envname("SPOLAR_TOL_SING");
  sub->add_flag("-q,--quiet", config.quiet, "Suppress diagnostics on stderr")->envname("SPOLAR_QUIET");
  sub->add_flag("-v,--verbose", config.verbosity, "Print every residual");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Right and left polar decompositions with respect to scalar products"};
  app.require_subcommand(1);

  CliConfig config;
  RawFlags raw;
  const std::map<std::string, std::pair<Command, std::string>> commands{
      {"decompose", {Command::Decompose, "Compute F = W S and/or F = S' W' with certification"}},
      {"sign", {Command::Sign, "Generalized matrix sign of F"}},
      {"sqrt", {Command::Sqrt, "Principal square root of F"}},
      {"adjoint", {Command::Adjoint, "F^[N] or F^[M,N] plus the double-adjoint check"}},
      {"certify", {Command::Certify, "Re-certify factors stored in a report"}},
  };
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.second);
    add_common(sub, config, raw);
    if (entry.first == Command::Certify) {
      sub->add_option("--factors", config.factors, "Report file holding W, S, Sigma")->required();
    }
    sub->callback([&config, cmd = entry.first] { config.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : spolar::cli::kExitOperational;
  }

  try {
    if (!raw.form.empty()) config.form = spolar::parse_form_kind(raw.form);
    if (!raw.sign.empty()) config.sign = spolar::parse_sign_kind(raw.sign);
    if (!raw.side.empty()) config.side = spolar::io::parse_side(raw.side);
  } catch (const spolar::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return spolar::cli::kExitOperational;
  }
  if (raw.tol_eq > 0) config.tolerances.tol_eq = raw.tol_eq;
  if (raw.tol_class > 0) config.tolerances.tol_class = raw.tol_class;
  if (raw.tol_sing > 0) config.tolerances.tol_sing = raw.tol_sing;

  return spolar::cli::execute(config, std::cout, std::cerr);
}
