#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spolar/commands.hpp"
#include "golden.hpp"

using namespace spolar;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the installed tool; stderr is discarded.
Run run(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + (env.empty() ? "" : " ") + SPOLAR_CLI + std::string(" ") + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string corpus(const std::string& name) { return std::string(SPOLAR_CORPUS_DIR) + "/" + name + ".json"; }

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "spolar_cli_test";
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("decompose exit codes on the corpus") {
  for (const auto& g : test::golden_cases()) {
    CAPTURE(g.file);
    const Run r = run("decompose -q " + corpus(g.file));
    CHECK(r.code == g.exit_code);
    const auto report = io::parse_report(r.out);
    CHECK(report.pass == (g.exit_code == 0));
    if (g.exit_code == 2) {
      CHECK(report.matrices.empty());
      CHECK(report.message.find("(F^[M,N])^[N,M] = F") != std::string::npos);
    }
  }
}

TEST_CASE("CLI output is byte-identical to the library path") {
  for (const auto& g : test::golden_cases()) {
    if (g.exit_code != 0) continue;
    CAPTURE(g.file);
    const auto problem = io::read_problem(corpus(g.file));
    const std::string expected = io::format_report(cli::run_decompose(problem));
    CHECK(run("decompose " + corpus(g.file)).out == expected);
  }
  const auto problem = io::read_problem(corpus("scalar_complex_bilinear_sign3"));
  CHECK(run("sign " + corpus("scalar_complex_bilinear_sign3")).out == io::format_report(cli::run_sign(problem)));
  CHECK(run("adjoint " + corpus("scalar_complex_bilinear_sign3")).out ==
        io::format_report(cli::run_adjoint(problem)));
}

TEST_CASE("-o writes the report to a file") {
  const auto out = scratch() / "report.json";
  fs::remove(out);
  const Run r = run("decompose -q -o " + out.string() + " " + corpus("symplectic_sesquilinear_sign2"));
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(io::read_report(out).pass);
}

TEST_CASE("certify accepts genuine factors and rejects tampered ones") {
  const auto dir = scratch();
  for (const char* name : {"indefinite_real_bilinear_sign2", "two_products_sesquilinear_sign2",
                           "rect_column_sesquilinear_sign3"}) {
    CAPTURE(name);
    const auto factors = dir / "factors.json";
    REQUIRE(run("decompose -q -o " + factors.string() + " " + corpus(name)).code == 0);
    CHECK(run("certify -q --factors " + factors.string() + " " + corpus(name)).code == 0);

    auto report = io::read_report(factors);
    for (auto& [key, m] : report.matrices) {
      if (key.ends_with("S")) m = -m;
      if (key.ends_with("W")) m = -m;
    }
    io::write_report(factors, report);
    const Run bad = run("certify -q --factors " + factors.string() + " " + corpus(name));
    CHECK(bad.code == 2);
    CHECK_FALSE(io::parse_report(bad.out).pass);
  }
  CHECK(run("certify -q " + corpus("indefinite_real_bilinear_sign2")).code != 0);
}

TEST_CASE("operational failures exit 1") {
  const auto dir = scratch();
  CHECK(run("decompose /nonexistent/problem.json").code == 1);
  write(dir / "broken.json", "{ \"form\": ");
  CHECK(run("decompose " + (dir / "broken.json").string()).code == 1);
  write(dir / "schema.json", R"({"form": "sesquilinear", "sign_function": "sign2",
    "F": {"rows": 2, "cols": 2, "entries": [[1, 0]]}, "N": {"rows": 1, "cols": 1, "entries": [[1, 0]]}})");
  CHECK(run("decompose " + (dir / "schema.json").string()).code == 1);
  CHECK(run("frobnicate " + corpus("scalar_sesquilinear_sign1")).code == 1);
  CHECK(run("decompose --sign sign9 " + corpus("scalar_sesquilinear_sign1")).code == 1);
  // Overriding to real_bilinear with complex data is an InvalidForm, not a precondition.
  CHECK(run("decompose --form real_bilinear " + corpus("scalar_sesquilinear_sign1")).code == 1);
}

TEST_CASE("precondition failures of sign and sqrt exit 2") {
  const auto dir = scratch();
  write(dir / "neg.json", R"({"form": "complex_bilinear", "sign_function": "sign1",
    "F": {"rows": 2, "cols": 2, "entries": [[-4, 0], [0, 0], [0, 0], [1, 0]]}})");
  CHECK(run("sqrt " + (dir / "neg.json").string()).code == 2);
  CHECK(run("sign " + (dir / "neg.json").string()).code == 0);
  write(dir / "axis.json", R"({"form": "complex_bilinear", "sign_function": "sign1",
    "F": {"rows": 1, "cols": 1, "entries": [[0, 3]]}})");
  CHECK(run("sign " + (dir / "axis.json").string()).code == 2);
}

TEST_CASE("flags and environment variables override file values") {
  // File says sign3; flag switches to sign1, which gives W = i for this F.
  Run r = run("decompose -q --sign sign1 " + corpus("scalar_complex_bilinear_sign3"));
  REQUIRE(r.code == 0);
  auto report = io::parse_report(r.out);
  CHECK(report.metadata.sign_function == "sign1");
  CHECK(std::abs((*report.matrix("W"))(0, 0) - Complex(0.0, 1.0)) <= 1e-12);

  r = run("decompose -q " + corpus("scalar_complex_bilinear_sign3"), "SPOLAR_SIGN=sign2");
  report = io::parse_report(r.out);
  CHECK(report.metadata.sign_function == "sign2");
  CHECK(std::abs((*report.matrix("W"))(0, 0) - Complex(-1.0)) <= 1e-12);

  r = run("decompose -q --side left " + corpus("scalar_complex_bilinear_sign3"));
  CHECK(io::parse_report(r.out).metadata.side == "left");

  r = run("decompose -q --tol-eq 1e-10 " + corpus("scalar_complex_bilinear_sign3"));
  CHECK(io::parse_report(r.out).metadata.tolerances.tol_eq == 1e-10);
  CHECK(run("decompose -q --tol-eq -1 " + corpus("scalar_complex_bilinear_sign3")).code == 1);
}

TEST_CASE("execute reports an override note unless quiet") {
  cli::CliConfig config;
  config.command = cli::Command::Sign;
  config.input = corpus("scalar_complex_bilinear_sign3");
  config.sign = SignKind::Sign1;
  std::ostringstream out, err;
  CHECK(cli::execute(config, out, err) == cli::kExitOk);
  CHECK(err.str().find("--sign overrides") != std::string::npos);
  config.quiet = true;
  std::ostringstream out2, err2;
  CHECK(cli::execute(config, out2, err2) == cli::kExitOk);
  CHECK(err2.str().empty());
  CHECK(out.str() == out2.str());
}

TEST_CASE("help exits 0") { CHECK(run("--help").code == 0); }

TEST_CASE("sign, sqrt and adjoint subcommands on small inputs") {
  const auto dir = scratch();
  write(dir / "gram.json", R"({"form": "sesquilinear", "sign_function": "sign2",
    "F": {"rows": 2, "cols": 2, "entries": [[9, 0], [0, 0], [0, 0], [-2, 0]]}})");
  Run r = run("sign -q " + (dir / "gram.json").string());
  CHECK(r.code == 0);
  CHECK(test::max_abs_diff(*io::parse_report(r.out).matrix("Sigma"), test::mat({{1.0, 0.0}, {0.0, -1.0}})) == 0.0);

  write(dir / "id.json", R"({"form": "sesquilinear", "sign_function": "sign2",
    "F": {"rows": 2, "cols": 2, "entries": [[1, 0], [0, 0], [0, 0], [1, 0]]}})");
  r = run("sqrt -q " + (dir / "id.json").string());
  CHECK(r.code == 0);
  CHECK(*io::parse_report(r.out).matrix("X") == ComplexMatrix::Identity(2, 2));

  // H^{-1} F^T H with H = diag(1, -4), worked by hand.
  r = run("adjoint -q " + corpus("indefinite_real_bilinear_sign2"));
  CHECK(r.code == 0);
  const auto report = io::parse_report(r.out);
  CHECK(test::max_abs_diff(*report.matrix("adjoint"), test::mat({{0.0, -4.0}, {-1.0, 0.0}})) <= 1e-15);

  // The adjoint exists even when the double-adjoint condition fails.
  r = run("adjoint -q " + corpus("double_adjoint_rejected_complex_bilinear"));
  CHECK(r.code == 0);
  CHECK_FALSE(io::parse_report(r.out).residuals.front().passed);
}
