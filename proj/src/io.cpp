#include "spolar/io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace spolar::io {

using Json = nlohmann::ordered_json;

std::string_view to_string(SideRequest side) {
  switch (side) {
    case SideRequest::Right: return "right";
    case SideRequest::Left: return "left";
    case SideRequest::Both: return "both";
  }
  return "unknown";
}

SideRequest parse_side(std::string_view name) {
  if (name == "right") return SideRequest::Right;
  if (name == "left") return SideRequest::Left;
  if (name == "both") return SideRequest::Both;
  throw Error(ErrorKind::SchemaError, "side: expected right|left|both, got '" + std::string(name) + "'");
}

Tolerances TolerancesOverride::apply(Tolerances base) const {
  if (tol_sing) base.tol_sing = *tol_sing;
  if (tol_eq) base.tol_eq = *tol_eq;
  if (tol_class) base.tol_class = *tol_class;
  return base;
}

const ComplexMatrix* ReportFile::matrix(std::string_view name) const {
  for (const auto& [key, value] : matrices) {
    if (key == name) return &value;
  }
  return nullptr;
}

namespace {

bool same_bits(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

bool same_matrix(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (!same_bits(a.data()[i].real(), b.data()[i].real()) ||
        !same_bits(a.data()[i].imag(), b.data()[i].imag())) {
      return false;
    }
  }
  return true;
}

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::SchemaError, path + ": " + what);
}

const Json& field(const Json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string join(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

std::string get_string(const Json& obj, const std::string& path, const char* key) {
  const Json& v = field(obj, path, key);
  if (!v.is_string()) schema_error(join(path, key), "expected a string");
  return v.get<std::string>();
}

// Non-finite doubles are written as strings, which JSON numbers cannot hold.
Json encode_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double decode_double(const Json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  schema_error(path, "expected a number");
}

Json encode_matrix(const ComplexMatrix& a) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      entries.push_back(Json::array({encode_double(a(i, j).real()), encode_double(a(i, j).imag())}));
    }
  }
  Json out;
  out["rows"] = a.rows();
  out["cols"] = a.cols();
  out["entries"] = std::move(entries);
  return out;
}

Eigen::Index get_count(const Json& obj, const std::string& path, const char* key) {
  const Json& v = field(obj, path, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    schema_error(join(path, key), "expected a non-negative integer");
  }
  return static_cast<Eigen::Index>(v.get<long long>());
}

ComplexMatrix decode_matrix(const Json& v, const std::string& path) {
  if (!v.is_object()) schema_error(path, "expected a matrix object");
  const auto rows = get_count(v, path, "rows");
  const auto cols = get_count(v, path, "cols");
  const Json& entries = field(v, path, "entries");
  const std::string epath = path + ".entries";
  if (!entries.is_array()) schema_error(epath, "expected an array");
  if (static_cast<Eigen::Index>(entries.size()) != rows * cols) {
    schema_error(epath, "expected " + std::to_string(rows * cols) + " entries, found " +
                            std::to_string(entries.size()));
  }
  ComplexMatrix a(rows, cols);
  for (Eigen::Index k = 0; k < rows * cols; ++k) {
    const Json& e = entries[static_cast<std::size_t>(k)];
    const std::string kpath = epath + "[" + std::to_string(k) + "]";
    if (!e.is_array() || e.size() != 2) schema_error(kpath, "expected an [re, im] pair");
    a(k / cols, k % cols) = Complex(decode_double(e[0], kpath + "[0]"), decode_double(e[1], kpath + "[1]"));
  }
  return a;
}

Json parse_json(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw Error(ErrorKind::ParseError, "line 1, column 1: empty document");
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write failed for '" + path.string() + "'");
}

Json encode_tolerances(const Tolerances& t) {
  Json out;
  out["tol_sing"] = t.tol_sing;
  out["tol_eq"] = t.tol_eq;
  out["tol_class"] = t.tol_class;
  return out;
}

void require_real(const ComplexMatrix& a, const std::string& path) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (a.data()[k].imag() != 0.0) {
      // Eigen storage is column-major; report the row-major index.
      const auto i = k % a.rows(), j = k / a.rows();
      schema_error(path + ".entries[" + std::to_string(i * a.cols() + j) + "]",
                   "real_bilinear requires im = 0");
    }
  }
}

}  // namespace

bool operator==(const ReportFile& a, const ReportFile& b) {
  const auto& ma = a.metadata;
  const auto& mb = b.metadata;
  if (ma.version != mb.version || ma.command != mb.command || ma.form != mb.form ||
      ma.sign_function != mb.sign_function || ma.side != mb.side ||
      !same_bits(ma.tolerances.tol_sing, mb.tolerances.tol_sing) ||
      !same_bits(ma.tolerances.tol_eq, mb.tolerances.tol_eq) ||
      !same_bits(ma.tolerances.tol_class, mb.tolerances.tol_class)) {
    return false;
  }
  if (a.pass != b.pass || a.message != b.message) return false;
  if (a.matrices.size() != b.matrices.size() || a.residuals.size() != b.residuals.size()) return false;
  for (std::size_t i = 0; i < a.matrices.size(); ++i) {
    if (a.matrices[i].first != b.matrices[i].first ||
        !same_matrix(a.matrices[i].second, b.matrices[i].second)) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.residuals.size(); ++i) {
    const auto& x = a.residuals[i];
    const auto& y = b.residuals[i];
    if (x.name != y.name || x.passed != y.passed || !same_bits(x.value, y.value) ||
        !same_bits(x.limit, y.limit)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Problems

ProblemFile parse_problem(const std::string& text) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) schema_error("<root>", "expected an object");

  ProblemFile p;
  p.form = parse_form_kind(get_string(doc, "", "form"));
  p.sign_function = parse_sign_kind(get_string(doc, "", "sign_function"));
  p.side = doc.contains("side") ? parse_side(get_string(doc, "", "side")) : SideRequest::Right;
  p.f = decode_matrix(field(doc, "", "F"), "F");
  if (doc.contains("N")) p.n = decode_matrix(doc["N"], "N");
  if (doc.contains("M")) p.m = decode_matrix(doc["M"], "M");
  if (p.m && !p.n) schema_error("N", "required when M is given");

  if (doc.contains("tolerances")) {
    const Json& t = doc["tolerances"];
    if (!t.is_object()) schema_error("tolerances", "expected an object");
    for (const auto& [key, value] : t.items()) {
      const std::string path = "tolerances." + key;
      const double v = decode_double(value, path);
      if (!(std::isfinite(v) && v > 0.0)) schema_error(path, "must be a positive number");
      if (key == "tol_sing") p.tolerances.tol_sing = v;
      else if (key == "tol_eq") p.tolerances.tol_eq = v;
      else if (key == "tol_class") p.tolerances.tol_class = v;
      else schema_error(path, "unknown tolerance");
    }
  }

  // Shapes: F is m x n, N is n x n, M is m x m.
  if (p.f.size() == 0) schema_error("F", "must be non-empty");
  if (p.n) {
    if (p.n->rows() != p.n->cols()) schema_error("N", "must be square");
    if (p.n->rows() != p.f.cols()) schema_error("N", "dimension must equal F.cols");
    if (!p.m && p.f.rows() != p.f.cols()) schema_error("M", "required for non-square F");
  }
  if (p.m) {
    if (p.m->rows() != p.m->cols()) schema_error("M", "must be square");
    if (p.m->rows() != p.f.rows()) schema_error("M", "dimension must equal F.rows");
  }
  require_finite(p.f, "F");
  if (p.n) require_finite(*p.n, "N");
  if (p.m) require_finite(*p.m, "M");
  if (p.form == FormKind::RealBilinear) {
    require_real(p.f, "F");
    if (p.n) require_real(*p.n, "N");
    if (p.m) require_real(*p.m, "M");
  }
  return p;
}

ProblemFile read_problem(const std::filesystem::path& path) { return parse_problem(slurp(path)); }

std::string format_problem(const ProblemFile& p) {
  Json doc;
  doc["form"] = std::string(to_string(p.form));
  doc["sign_function"] = std::string(to_string(p.sign_function));
  doc["side"] = std::string(to_string(p.side));
  doc["F"] = encode_matrix(p.f);
  if (p.n) doc["N"] = encode_matrix(*p.n);
  if (p.m) doc["M"] = encode_matrix(*p.m);
  Json tol = Json::object();
  if (p.tolerances.tol_sing) tol["tol_sing"] = *p.tolerances.tol_sing;
  if (p.tolerances.tol_eq) tol["tol_eq"] = *p.tolerances.tol_eq;
  if (p.tolerances.tol_class) tol["tol_class"] = *p.tolerances.tol_class;
  if (!tol.empty()) doc["tolerances"] = std::move(tol);
  return doc.dump(2) + "\n";
}

void write_problem(const std::filesystem::path& path, const ProblemFile& problem) {
  spit(path, format_problem(problem));
}

// ---------------------------------------------------------------------------
// Reports

ReportFile parse_report(const std::string& text) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) schema_error("<root>", "expected an object");
  ReportFile r;
  r.metadata.version = get_string(doc, "", "version");
  r.metadata.command = get_string(doc, "", "command");
  r.metadata.form = get_string(doc, "", "form");
  r.metadata.sign_function = get_string(doc, "", "sign_function");
  r.metadata.side = get_string(doc, "", "side");
  const Json& tol = field(doc, "", "tolerances");
  if (!tol.is_object()) schema_error("tolerances", "expected an object");
  r.metadata.tolerances.tol_sing = decode_double(field(tol, "tolerances", "tol_sing"), "tolerances.tol_sing");
  r.metadata.tolerances.tol_eq = decode_double(field(tol, "tolerances", "tol_eq"), "tolerances.tol_eq");
  r.metadata.tolerances.tol_class = decode_double(field(tol, "tolerances", "tol_class"), "tolerances.tol_class");

  const Json& mats = field(doc, "", "matrices");
  if (!mats.is_object()) schema_error("matrices", "expected an object");
  for (const auto& [key, value] : mats.items()) {
    r.matrices.emplace_back(key, decode_matrix(value, "matrices." + key));
  }
  const Json& res = field(doc, "", "residuals");
  if (!res.is_object()) schema_error("residuals", "expected an object");
  for (const auto& [key, value] : res.items()) {
    const std::string path = "residuals." + key;
    if (!value.is_object()) schema_error(path, "expected an object");
    Residual x;
    x.name = key;
    x.value = decode_double(field(value, path, "value"), path + ".value");
    x.limit = decode_double(field(value, path, "limit"), path + ".limit");
    const Json& passed = field(value, path, "passed");
    if (!passed.is_boolean()) schema_error(path + ".passed", "expected a boolean");
    x.passed = passed.get<bool>();
    r.residuals.push_back(std::move(x));
  }
  const Json& pass = field(doc, "", "pass");
  if (!pass.is_boolean()) schema_error("pass", "expected a boolean");
  r.pass = pass.get<bool>();
  r.message = doc.contains("message") ? get_string(doc, "", "message") : std::string();
  return r;
}

ReportFile read_report(const std::filesystem::path& path) { return parse_report(slurp(path)); }

std::string format_report(const ReportFile& r) {
  Json doc;
  doc["version"] = r.metadata.version;
  doc["command"] = r.metadata.command;
  doc["form"] = r.metadata.form;
  doc["sign_function"] = r.metadata.sign_function;
  doc["side"] = r.metadata.side;
  doc["tolerances"] = encode_tolerances(r.metadata.tolerances);
  Json mats = Json::object();
  for (const auto& [name, value] : r.matrices) mats[name] = encode_matrix(value);
  doc["matrices"] = std::move(mats);
  Json res = Json::object();
  for (const auto& x : r.residuals) {
    Json entry;
    entry["value"] = encode_double(x.value);
    entry["limit"] = encode_double(x.limit);
    entry["passed"] = x.passed;
    res[x.name] = std::move(entry);
  }
  doc["residuals"] = std::move(res);
  doc["pass"] = r.pass;
  doc["message"] = r.message;
  return doc.dump(2) + "\n";
}

void write_report(const std::filesystem::path& path, const ReportFile& report) {
  spit(path, format_report(report));
}

}  // namespace spolar::io
