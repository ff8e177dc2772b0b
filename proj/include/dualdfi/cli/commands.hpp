#pragma once

#include <optional>
#include <string>

#include "dualdfi/cli/problem_io.hpp"

namespace dualdfi::cli {

enum class Command { SolvePrimal, SolveDual, Gap, Certify, Adjoint, Oracle };

std::optional<Command> command_from_string(const std::string& s);
std::string to_string(Command c);

struct CommandOptions {
  std::optional<std::size_t> grid;  // overrides the document
  std::optional<double> tol;        // certificate tolerance
  std::optional<transcription::DualTrajectory> dual;  // certify with this dual
};

enum ExitCode { kOk = 0, kFailure = 1, kCertificateFailure = 2 };

struct CommandResult {
  Json report;
  std::string csv;  // plot data, may be empty
  int exit_code = kOk;
};

/// Solver failures are reported with status "error" and exit code 1.
CommandResult run_command(Command cmd, const ProblemDocument& doc, const CommandOptions& opts);

}  // namespace dualdfi::cli
