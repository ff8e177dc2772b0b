#include "dualdfi/cli/problem_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace dualdfi::cli {

using convex::PiecewiseMaxAffine;
using convex::Polytope;
using numerics::Matrix;
using numerics::Vector;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ParseError(path + ": " + msg);
}

std::string kind_name(const Json& j) {
  if (j.is_number()) return "number";
  if (j.is_string()) return "string";
  if (j.is_array()) return "array";
  if (j.is_object()) return "object";
  if (j.is_boolean()) return "boolean";
  return "null";
}

void expect_keys(const Json& j, const std::string& path, const std::set<std::string>& required,
                 const std::set<std::string>& optional) {
  if (!j.is_object()) fail(path, "expected an object, got " + kind_name(j));
  for (const auto& [k, v] : j.items())
    if (!required.count(k) && !optional.count(k)) fail(path, "unknown field \"" + k + "\"");
  for (const auto& k : required)
    if (!j.contains(k)) fail(path, "missing field \"" + k + "\"");
}

double get_number(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "+inf" || s == "inf") return numerics::kInf;
    if (s == "-inf") return -numerics::kInf;
  }
  fail(path, "expected a number, got " + kind_name(j));
}

double get_finite(const Json& j, const std::string& path) {
  const double v = get_number(j, path);
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

std::size_t get_count(const Json& j, const std::string& path, std::size_t min) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) fail(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < static_cast<long long>(min)) fail(path, "must be at least " + std::to_string(min));
  return static_cast<std::size_t>(v);
}

Vector get_vector(const Json& j, const std::string& path, std::optional<std::size_t> len) {
  if (!j.is_array()) fail(path, "expected an array, got " + kind_name(j));
  if (len && j.size() != *len)
    fail(path, "length must be " + std::to_string(*len) + " (got " + std::to_string(j.size()) + ")");
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(get_finite(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

Matrix get_matrix(const Json& j, const std::string& path, std::optional<std::size_t> rows,
                  std::size_t cols) {
  if (!j.is_array()) fail(path, "expected an array of rows, got " + kind_name(j));
  if (rows && j.size() != *rows)
    fail(path, "must have " + std::to_string(*rows) + " rows (got " + std::to_string(j.size()) + ")");
  Matrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vector r = get_vector(j[i], path + "[" + std::to_string(i) + "]", cols);
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = r[c];
  }
  return m;
}

Polytope get_polytope(const Json& j, const std::string& path, std::size_t dim) {
  expect_keys(j, path, {"G", "h"}, {});
  Matrix g = get_matrix(j["G"], path + ".G", std::nullopt, dim);
  Vector h = get_vector(j["h"], path + ".h", g.rows());
  if (g.rows() == 0) return Polytope(dim);
  try {
    return Polytope(std::move(g), std::move(h));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

Json matrix_json(const Matrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) r.push_back(number(m(i, c)));
    a.push_back(std::move(r));
  }
  return a;
}

Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

Json polytope_json(const Polytope& q) {
  Json o;
  o["G"] = matrix_json(q.g());
  o["h"] = vector_json(q.h());
  return o;
}

Json parse_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    const auto pos = what.find("syntax error");
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                     (pos == std::string::npos ? what : what.substr(pos)));
  }
}

void dump_into(const Json& j, std::string& out, int indent) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += inner + Json(k).dump() + ": ";
      dump_into(v, out, indent + 2);
    }
    out += "\n" + pad + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    // Arrays of scalars stay on one line.
    bool flat = true;
    for (const auto& v : j) flat &= !v.is_structured();
    if (flat) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        dump_into(j[i], out, indent);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += inner;
      dump_into(j[i], out, indent + 2);
    }
    out += "\n" + pad + "]";
  } else if (j.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
    out += buf;
  } else {
    out += j.dump();
  }
}

}  // namespace

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v == 0.0 ? 0.0 : v;
}

std::string dump(const Json& j) {
  std::string out;
  dump_into(j, out, 0);
  out += "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

ProblemDocument build_problem(const Json& j) {
  const std::string root = "$";
  if (!j.is_object()) fail(root, "expected an object");
  if (!j.contains("kind")) fail(root, "missing field \"kind\"");
  if (!j["kind"].is_string()) fail("$.kind", "expected a string");
  const std::string kind = j["kind"].get<std::string>();

  const std::set<std::string> common_opt = {"grid", "tolerances"};
  ProblemDocument doc;
  dfi::MayerProblem& p = doc.problem;
  std::size_t n = 0, kappa = 0;
  if (kind == "semilinear") {
    expect_keys(j, root, {"kind", "kappa", "n", "r", "A", "B", "U", "Q", "phi"}, common_opt);
    dfi::SemilinearMap f;
    f.kappa = kappa = get_count(j["kappa"], "$.kappa", 1);
    f.n = n = get_count(j["n"], "$.n", 1);
    f.r = get_count(j["r"], "$.r", 1);
    const Json& a = j["A"];
    if (!a.is_array()) fail("$.A", "expected a list of matrices");
    if (a.size() != kappa) fail("$.A", "must have κ matrices (got " + std::to_string(a.size()) + ")");
    for (std::size_t i = 0; i < kappa; ++i)
      f.A.push_back(get_matrix(a[i], "$.A[" + std::to_string(i) + "]", n, n));
    f.B = get_matrix(j["B"], "$.B", n, f.r);
    f.U = get_polytope(j["U"], "$.U", f.r);
    if (!f.U.bounded()) fail("$.U", "U must be bounded");
    p.F = f;
  } else if (kind == "polyhedral2") {
    expect_keys(j, root, {"kind", "kappa", "n", "A", "B", "C", "d", "Q", "phi"},
                {"grid", "tolerances", "reference"});
    kappa = get_count(j["kappa"], "$.kappa", 1);
    if (kappa != 2) fail("$.kappa", "polyhedral2 requires kappa = 2");
    n = get_count(j["n"], "$.n", 1);
    dfi::PolyhedralMap2 f;
    f.C = get_matrix(j["C"], "$.C", std::nullopt, n);
    const std::size_t s = f.C.rows();
    if (s == 0) fail("$.C", "must have at least one row");
    f.A = get_matrix(j["A"], "$.A", s, n);
    f.B = get_matrix(j["B"], "$.B", s, n);
    if (!j["d"].is_array() || j["d"].size() != s)
      fail("$.d", "d must have one entry per row of C (s = " + std::to_string(s) + ")");
    f.d = get_vector(j["d"], "$.d", s);
    if (j.contains("reference")) {
      const Json& r = j["reference"];
      expect_keys(r, "$.reference", {"x", "v1"}, {});
      f.ref_x = get_vector(r["x"], "$.reference.x", n);
      f.ref_v1 = get_vector(r["v1"], "$.reference.v1", n);
    }
    p.F = f;
  } else {
    fail("$.kind", "must be \"semilinear\" or \"polyhedral2\" (got \"" + kind + "\")");
  }

  const Json& q = j["Q"];
  if (!q.is_array()) fail("$.Q", "expected a list of polytopes");
  if (q.size() != kappa) fail("$.Q", "Q must have κ entries");
  for (std::size_t i = 0; i < kappa; ++i)
    p.Q.push_back(get_polytope(q[i], "$.Q[" + std::to_string(i) + "]", n));

  const Json& phi = j["phi"];
  if (!phi.is_array() || phi.empty()) fail("$.phi", "expected a non-empty list of pieces");
  std::vector<PiecewiseMaxAffine::Piece> pieces;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const std::string path = "$.phi[" + std::to_string(i) + "]";
    expect_keys(phi[i], path, {"c", "b"}, {});
    pieces.push_back({get_vector(phi[i]["c"], path + ".c", kappa * n), get_finite(phi[i]["b"], path + ".b")});
  }
  p.phi = PiecewiseMaxAffine(std::move(pieces));

  if (j.contains("grid")) doc.options.grid = get_count(j["grid"], "$.grid", 1);
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    expect_keys(t, "$.tolerances", {}, {"certificate", "gap"});
    if (t.contains("certificate"))
      doc.options.certificate_tol = get_finite(t["certificate"], "$.tolerances.certificate");
    if (t.contains("gap")) doc.options.gap_tol = get_finite(t["gap"], "$.tolerances.gap");
  }

  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    fail(root, e.what());
  }
  return doc;
}

}  // namespace

ProblemDocument parse_problem(const std::string& text, const std::string& source) {
  const Json j = parse_text(text, source);
  try {
    return build_problem(j);
  } catch (const ParseError& e) {
    throw ParseError(source + ": " + e.what());
  }
}

ProblemDocument parse_problem_file(const std::string& path) { return parse_problem(read_file(path), path); }

Json serialize_problem(const ProblemDocument& doc) {
  const auto& p = doc.problem;
  Json j;
  if (p.semilinear()) {
    const auto& f = p.semilinear_map();
    j["kind"] = "semilinear";
    j["kappa"] = f.kappa;
    j["n"] = f.n;
    j["r"] = f.r;
    Json a = Json::array();
    for (const auto& m : f.A) a.push_back(matrix_json(m));
    j["A"] = a;
    j["B"] = matrix_json(f.B);
    j["U"] = polytope_json(f.U);
  } else {
    const auto& f = p.polyhedral_map();
    j["kind"] = "polyhedral2";
    j["kappa"] = 2;
    j["n"] = f.n();
    j["A"] = matrix_json(f.A);
    j["B"] = matrix_json(f.B);
    j["C"] = matrix_json(f.C);
    j["d"] = vector_json(f.d);
    if (f.ref_x || f.ref_v1) {
      const Vector zero(f.n(), 0.0);
      j["reference"] = {{"x", vector_json(f.ref_x.value_or(zero))},
                        {"v1", vector_json(f.ref_v1.value_or(zero))}};
    }
  }
  Json q = Json::array();
  for (const auto& s : p.Q) q.push_back(polytope_json(s));
  j["Q"] = q;
  Json phi = Json::array();
  for (const auto& piece : p.phi.pieces()) phi.push_back({{"c", vector_json(piece.c)}, {"b", number(piece.b)}});
  j["phi"] = phi;
  if (doc.options.grid) j["grid"] = *doc.options.grid;
  if (doc.options.certificate_tol || doc.options.gap_tol) {
    Json t = Json::object();
    if (doc.options.certificate_tol) t["certificate"] = *doc.options.certificate_tol;
    if (doc.options.gap_tol) t["gap"] = *doc.options.gap_tol;
    j["tolerances"] = t;
  }
  return j;
}

Json serialize_dual(const transcription::DualTrajectory& d) {
  Json j;
  j["N"] = d.grid.N;
  Json xs = Json::array();
  for (const auto& v : d.xstar) xs.push_back(vector_json(v));
  j["xstar"] = xs;
  Json eta = Json::array();
  for (const auto& e : d.eta) {
    Json ej = Json::array();
    for (const auto& v : e) ej.push_back(vector_json(v));
    eta.push_back(ej);
  }
  j["eta"] = eta;
  Json lam = Json::array();
  for (const auto& v : d.lambda) lam.push_back(vector_json(v));
  j["lambda"] = lam;
  j["degenerate"] = d.degenerate;
  return j;
}

transcription::DualTrajectory parse_dual(const std::string& text, const std::string& source) {
  Json j = parse_text(text, source);
  std::string root = "$";
  if (j.is_object() && j.contains("dual") && !j.contains("xstar")) {
    j = Json(j["dual"]);
    root = "$.dual";
  }
  expect_keys(j, root, {"N", "xstar"}, {"eta", "lambda", "degenerate"});
  transcription::DualTrajectory d;
  d.grid = transcription::Grid(get_count(j["N"], root + ".N", 1));
  auto rows = [&](const Json& a, const std::string& path) {
    if (!a.is_array()) fail(path, "expected an array of vectors");
    std::vector<Vector> out;
    for (std::size_t i = 0; i < a.size(); ++i)
      out.push_back(get_vector(a[i], path + "[" + std::to_string(i) + "]", std::nullopt));
    return out;
  };
  d.xstar = rows(j["xstar"], root + ".xstar");
  if (j.contains("eta")) {
    if (!j["eta"].is_array()) fail(root + ".eta", "expected a list");
    for (std::size_t i = 0; i < j["eta"].size(); ++i)
      d.eta.push_back(rows(j["eta"][i], root + ".eta[" + std::to_string(i) + "]"));
  }
  if (j.contains("lambda")) d.lambda = rows(j["lambda"], root + ".lambda");
  if (j.contains("degenerate")) {
    if (!j["degenerate"].is_boolean()) fail(root + ".degenerate", "expected a boolean");
    d.degenerate = j["degenerate"].get<bool>();
  }
  return d;
}

transcription::DualTrajectory parse_dual_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_dual(text, path);
  } catch (const ParseError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw ParseError(path + ": " + what);
  }
}

}  // namespace dualdfi::cli
