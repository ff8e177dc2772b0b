#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "dualdfi/dfi/problem.hpp"
#include "dualdfi/transcription/trajectory.hpp"
#include "json.hpp"

namespace dualdfi::cli {

using Json = nlohmann::ordered_json;

/// Malformed JSON (with line and column) or a schema violation (with the
/// field path, e.g. "$.Q[1].h").
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemOptions {
  std::optional<std::size_t> grid;
  std::optional<double> certificate_tol;
  std::optional<double> gap_tol;

  friend bool operator==(const ProblemOptions&, const ProblemOptions&) = default;
};

struct ProblemDocument {
  dfi::MayerProblem problem;
  ProblemOptions options;

  friend bool operator==(const ProblemDocument&, const ProblemDocument&) = default;
};

/// `source` names the input in diagnostics.
ProblemDocument parse_problem(const std::string& text, const std::string& source = "<input>");
ProblemDocument parse_problem_file(const std::string& path);

Json serialize_problem(const ProblemDocument& doc);

/// Dual trajectory as written by solve-dual: {"N", "xstar", "eta", "lambda"}.
/// A whole report is accepted too, the "dual" member is used then.
transcription::DualTrajectory parse_dual(const std::string& text, const std::string& source = "<input>");
transcription::DualTrajectory parse_dual_file(const std::string& path);
Json serialize_dual(const transcription::DualTrajectory& d);

/// Finite values as numbers, infinities as "+inf" / "-inf".
Json number(double v);

/// Two-space indented JSON with every float written as %.17g.
std::string dump(const Json& j);

std::string read_file(const std::string& path);

}  // namespace dualdfi::cli
