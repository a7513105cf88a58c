#pragma once

// JSON problem and report files.
//
// Matrices are encoded as
//   {"rows": r, "cols": c, "entries": [[re, im], ...]}   (row-major)
// Doubles are written with shortest round-trip formatting, so
// read(write(x)) reproduces every value bit for bit.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spolar/core.hpp"
#include "spolar/matfunc.hpp"

namespace spolar::io {

enum class SideRequest { Right, Left, Both };

std::string_view to_string(SideRequest side);
SideRequest parse_side(std::string_view name);

struct TolerancesOverride {
  std::optional<double> tol_sing;
  std::optional<double> tol_eq;
  std::optional<double> tol_class;

  Tolerances apply(Tolerances base) const;
  bool operator==(const TolerancesOverride&) const = default;
};

struct ProblemFile {
  FormKind form = FormKind::Sesquilinear;
  SignKind sign_function = SignKind::Sign2;
  SideRequest side = SideRequest::Right;
  ComplexMatrix f;
  std::optional<ComplexMatrix> n;
  std::optional<ComplexMatrix> m;
  TolerancesOverride tolerances;
};

struct Residual {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool passed = false;

  bool operator==(const Residual&) const = default;
};

struct ReportMetadata {
  std::string version;
  std::string command;
  std::string form;
  std::string sign_function;
  std::string side;
  Tolerances tolerances;
};

struct ReportFile {
  ReportMetadata metadata;
  std::vector<std::pair<std::string, ComplexMatrix>> matrices;  // ordered
  std::vector<Residual> residuals;                              // ordered
  bool pass = false;
  std::string message;

  const ComplexMatrix* matrix(std::string_view name) const;
};

bool operator==(const ReportFile& a, const ReportFile& b);

inline constexpr const char* kFormatVersion = "1.0";

/// Throws ParseError (with line/column) or SchemaError (naming the field).
ProblemFile parse_problem(const std::string& text);
ProblemFile read_problem(const std::filesystem::path& path);
std::string format_problem(const ProblemFile& problem);
void write_problem(const std::filesystem::path& path, const ProblemFile& problem);

ReportFile parse_report(const std::string& text);
ReportFile read_report(const std::filesystem::path& path);
std::string format_report(const ReportFile& report);
void write_report(const std::filesystem::path& path, const ReportFile& report);

}  // namespace spolar::io
