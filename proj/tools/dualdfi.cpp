// dualdfi: primal/dual transcription, certificates and oracle checks for
// Mayer problems with higher order differential inclusions.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "dualdfi/cli/commands.hpp"

namespace {

using dualdfi::cli::Command;

std::string csv_path(const std::string& out) {
  const auto slash = out.find_last_of('/');
  const auto dot = out.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + ".csv";
  return out.substr(0, dot) + ".csv";
}

bool write(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primal-dual solver and optimality certificates for higher order differential inclusions"};
  app.require_subcommand(1);

  std::string problem_path, out_path, dual_path;
  std::size_t grid = 0;
  double tol = 0.0;

  const std::pair<Command, const char*> commands[] = {
      {Command::SolvePrimal, "Solve the Euler transcription of the primal problem"},
      {Command::SolveDual, "Solve the discrete dual problem"},
      {Command::Gap, "Primal and dual optima and their gap"},
      {Command::Certify, "Check the optimality conditions for the optimal trajectory"},
      {Command::Adjoint, "Print the adjoint system"},
      {Command::Oracle, "Cross-check the primal LP against vertex enumeration"},
  };
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& [cmd, help] : commands) {
    CLI::App* s = app.add_subcommand(dualdfi::cli::to_string(cmd), help);
    s->add_option("problem", problem_path, "Problem JSON file")->required();
    s->add_option("--grid", grid, "Number of grid intervals N")->check(CLI::PositiveNumber);
    s->add_option("--tol", tol, "Certificate tolerance")->check(CLI::NonNegativeNumber);
    s->add_option("--out", out_path, "Write the JSON report here, plot data next to it as CSV");
    if (cmd == Command::Certify)
      s->add_option("--dual-in", dual_path, "Dual trajectory to certify instead of the extracted one");
    subs.emplace_back(cmd, s);
  }
  CLI11_PARSE(app, argc, argv);

  Command cmd = Command::SolvePrimal;
  CLI::App* chosen = nullptr;
  for (const auto& [c, s] : subs)
    if (s->parsed()) {
      cmd = c;
      chosen = s;
    }

  dualdfi::cli::ProblemDocument doc;
  dualdfi::cli::CommandOptions opts;
  try {
    doc = dualdfi::cli::parse_problem_file(problem_path);
    if (!dual_path.empty()) opts.dual = dualdfi::cli::parse_dual_file(dual_path);
  } catch (const dualdfi::cli::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dualdfi::cli::kFailure;
  }
  if (chosen->count("--grid")) opts.grid = grid;
  if (chosen->count("--tol")) opts.tol = tol;

  const auto result = dualdfi::cli::run_command(cmd, doc, opts);
  const std::string text = dualdfi::cli::dump(result.report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    if (!write(out_path, text)) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return dualdfi::cli::kFailure;
    }
    if (!result.csv.empty() && !write(csv_path(out_path), result.csv)) {
      std::cerr << "error: cannot write " << csv_path(out_path) << "\n";
      return dualdfi::cli::kFailure;
    }
  }
  if (result.report.contains("error"))
    std::cerr << "error: " << result.report["error"].get<std::string>() << "\n";
  if (result.report.contains("failing") && !result.report["failing"].empty())
    std::cerr << "certificate failed: " << result.report["failing"].dump() << "\n";
  return result.exit_code;
}
