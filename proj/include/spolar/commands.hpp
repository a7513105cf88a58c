#pragma once

// Subcommands of the command-line tool. Each run_* function is the exact
// library path the CLI takes, so a report produced here is byte-identical to
// the one the tool writes for the same problem.
//
// Exit codes: 0 success, 2 the mathematical object does not exist for this
// input (a precondition of the decomposition is violated, or certified
// factors fail an invariant), 1 anything operational (I/O, parse, schema,
// numerical breakdown).

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spolar/io.hpp"

namespace spolar::cli {

enum class Command { Decompose, Sign, Sqrt, Adjoint, Certify };

inline constexpr int kExitOk = 0;
inline constexpr int kExitOperational = 1;
inline constexpr int kExitPrecondition = 2;

std::string_view to_string(Command command);

struct CliConfig {
  Command command = Command::Decompose;
  std::filesystem::path input;
  std::optional<std::filesystem::path> output;   // stdout when absent
  std::optional<std::filesystem::path> factors;  // certify: report holding W, S, Sigma
  std::optional<FormKind> form;
  std::optional<SignKind> sign;
  std::optional<io::SideRequest> side;
  io::TolerancesOverride tolerances;
  bool quiet = false;
  int verbosity = 0;
};

/// Applies flag overrides to the problem, returning one note per field whose
/// file value was replaced by a different flag value.
std::vector<std::string> apply_overrides(io::ProblemFile& problem, const CliConfig& config);

io::ReportFile run_decompose(const io::ProblemFile& problem);
io::ReportFile run_sign(const io::ProblemFile& problem);
io::ReportFile run_sqrt(const io::ProblemFile& problem);
io::ReportFile run_adjoint(const io::ProblemFile& problem);
io::ReportFile run_certify(const io::ProblemFile& problem, const io::ReportFile& factors);

/// Report written when a precondition fails: no matrices, pass = false and
/// the violated clause in the message.
io::ReportFile precondition_report(const io::ProblemFile& problem, Command command, const Error& error);

/// Full command execution: read, override, dispatch, write, map to an exit
/// code. Human-readable diagnostics go to `err`; the report goes to the
/// output file or to `out`.
int execute(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace spolar::cli
