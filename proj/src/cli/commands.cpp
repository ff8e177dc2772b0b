#include "dualdfi/cli/commands.hpp"

#include <cmath>
#include <cstdio>

#include "dualdfi/certify/certificate.hpp"
#include "dualdfi/dfi/calculus.hpp"
#include "dualdfi/numerics/enumeration.hpp"

namespace dualdfi::cli {

using transcription::Grid;
using numerics::Vector;

namespace {

constexpr std::size_t kDefaultGrid = 64;
// Keeps the enumeration oracle's feasible region bounded.
constexpr double kOracleBox = 1e4;

Json vec(const Vector& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

Json primal_json(const transcription::PrimalTrajectory& x) {
  Json j;
  Json t = Json::array();
  for (std::size_t k = 0; k <= x.grid.N; ++k) t.push_back(number(x.grid.t(k)));
  j["t"] = t;
  Json z = Json::array();
  for (const auto& node : x.z) {
    Json zn = Json::array();
    for (const auto& v : node) zn.push_back(vec(v));
    z.push_back(zn);
  }
  j["z"] = z;
  Json v = Json::array();
  for (const auto& s : x.v) v.push_back(vec(s));
  j["v"] = v;
  if (!x.u.empty()) {
    Json u = Json::array();
    for (const auto& s : x.u) u.push_back(vec(s));
    j["u"] = u;
  }
  return j;
}

std::string primal_csv(const transcription::PrimalTrajectory& x) {
  const std::size_t kappa = x.z.front().size(), n = x.z.front().front().size();
  const std::size_t r = x.u.empty() ? 0 : x.u.front().size();
  std::string s = "k,t";
  for (std::size_t j = 0; j < kappa; ++j)
    for (std::size_t i = 0; i < n; ++i) s += ",z" + std::to_string(j) + "_" + std::to_string(i);
  for (std::size_t i = 0; i < n; ++i) s += ",v_" + std::to_string(i);
  for (std::size_t i = 0; i < r; ++i) s += ",u_" + std::to_string(i);
  s += "\n";
  for (std::size_t k = 0; k <= x.grid.N; ++k) {
    s += std::to_string(k) + "," + csv_num(x.grid.t(k));
    for (const auto& v : x.z[k])
      for (double c : v) s += "," + csv_num(c);
    // Interval quantities sit on their left node; the last node has none.
    for (std::size_t i = 0; i < n; ++i) s += k < x.grid.N ? "," + csv_num(x.v[k][i]) : ",";
    for (std::size_t i = 0; i < r; ++i) s += k < x.grid.N ? "," + csv_num(x.u[k][i]) : ",";
    s += "\n";
  }
  return s;
}

std::string dual_csv(const transcription::DualTrajectory& d) {
  const std::size_t n = d.xstar.front().size();
  const std::size_t s_dim = d.lambda.empty() ? 0 : d.lambda.front().size();
  std::string s = "k,t";
  for (std::size_t i = 0; i < n; ++i) s += ",xstar_" + std::to_string(i);
  for (std::size_t j = 0; j < d.eta.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) s += ",eta" + std::to_string(j + 1) + "_" + std::to_string(i);
  for (std::size_t i = 0; i < s_dim; ++i) s += ",lambda_" + std::to_string(i);
  s += "\n";
  for (std::size_t k = 0; k <= d.grid.N; ++k) {
    s += std::to_string(k) + "," + csv_num(d.grid.t(k));
    for (double c : d.xstar[k]) s += "," + csv_num(c);
    for (const auto& e : d.eta)
      for (double c : e[k]) s += "," + csv_num(c);
    // Interval k carries lambda(t_{k+1}).
    for (std::size_t i = 0; i < s_dim; ++i) s += k > 0 ? "," + csv_num(d.lambda[k - 1][i]) : ",";
    s += "\n";
  }
  return s;
}

Json adjoint_json(const dfi::MayerProblem& p) {
  Json j;
  if (p.semilinear()) {
    const auto sys = dfi::adjoint_system(p.semilinear_map());
    j["text"] = sys.text();
    Json at = Json::array();
    for (std::size_t i = 0; i < sys.AT.size(); ++i) {
      Json m = Json::array();
      for (std::size_t r = 0; r < sys.AT[i].rows(); ++r) m.push_back(vec(Vector(sys.AT[i].row(r).begin(), sys.AT[i].row(r).end())));
      at.push_back({{"name", "A" + std::to_string(i) + "ᵀ"}, {"matrix", m}});
    }
    j["matrices"] = at;
    Json eta = Json::array();
    const std::string text = sys.text();
    std::size_t start = 0;
    for (std::size_t j2 = 1; j2 < sys.kappa; ++j2) {
      const auto end = text.find("; ", start);
      eta.push_back(text.substr(start, end - start));
      start = end + 2;
    }
    j["eta"] = eta;
    j["ode"] = text.substr(start);
  } else {
    const auto& f = p.polyhedral_map();
    j["text"] = "x* = −Cᵀλ; η₁* = −Bᵀλ; Cᵀλ″ + Bᵀλ′ − Aᵀλ = 0";
    auto mat = [&](const numerics::Matrix& a) {
      const auto t = a.transpose();
      Json m = Json::array();
      for (std::size_t r = 0; r < t.rows(); ++r) m.push_back(vec(Vector(t.row(r).begin(), t.row(r).end())));
      return m;
    };
    j["matrices"] = Json::array({{{"name", "Aᵀ"}, {"matrix", mat(f.A)}},
                                 {{"name", "Bᵀ"}, {"matrix", mat(f.B)}},
                                 {{"name", "Cᵀ"}, {"matrix", mat(f.C)}}});
    j["eta"] = Json::array({"η₁* = −Bᵀλ"});
    j["ode"] = "Cᵀλ″ + Bᵀλ′ − Aᵀλ = 0";
  }
  return j;
}

Json entry_json(const certify::CertificateEntry& e) {
  Json j;
  j["name"] = e.name;
  j["residual"] = number(e.residual);
  j["tolerance"] = number(e.tolerance);
  j["pass"] = e.pass;
  j["details"] = e.details;
  return j;
}

void oracle(const dfi::MayerProblem& p, const Grid& g, Json& report, CommandResult& out) {
  auto tr = transcription::transcribe_primal(p, g);
  auto& lp = tr.lp;
  const std::size_t nv = lp.num_vars();
  numerics::Matrix ineq(lp.num_ineq() + 2 * nv, nv);
  Vector rhs = lp.ineq_rhs;
  for (std::size_t i = 0; i < lp.num_ineq(); ++i)
    for (std::size_t c = 0; c < nv; ++c) ineq(i, c) = lp.ineq(i, c);
  for (std::size_t c = 0; c < nv; ++c) {
    ineq(lp.num_ineq() + 2 * c, c) = 1.0;
    ineq(lp.num_ineq() + 2 * c + 1, c) = -1.0;
    rhs.push_back(kOracleBox);
    rhs.push_back(kOracleBox);
  }
  lp.ineq = std::move(ineq);
  lp.ineq_rhs = std::move(rhs);
  const auto simplex = numerics::solve_lp(lp);
  report["simplex"] = {{"status", std::string(numerics::to_string(simplex.status))},
                       {"value", number(simplex.value)}};
  const auto brute = numerics::solve_lp_by_enumeration(lp);
  report["enumeration"] = {{"status", std::string(numerics::to_string(brute.status))},
                           {"value", number(brute.value)}};
  const bool agree = simplex.status == brute.status &&
                     (simplex.status != numerics::LPStatus::Optimal ||
                      std::fabs(simplex.value - brute.value) <= 1e-8 * (1.0 + std::fabs(brute.value)));
  report["agree"] = agree;
  report["box"] = kOracleBox;
  out.exit_code = agree ? kOk : kCertificateFailure;
}

}  // namespace

std::optional<Command> command_from_string(const std::string& s) {
  for (Command c : {Command::SolvePrimal, Command::SolveDual, Command::Gap, Command::Certify,
                    Command::Adjoint, Command::Oracle})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

std::string to_string(Command c) {
  switch (c) {
    case Command::SolvePrimal: return "solve-primal";
    case Command::SolveDual: return "solve-dual";
    case Command::Gap: return "gap";
    case Command::Certify: return "certify";
    case Command::Adjoint: return "adjoint";
    case Command::Oracle: return "oracle";
  }
  return "?";
}

CommandResult run_command(Command cmd, const ProblemDocument& doc, const CommandOptions& opts) {
  const auto& p = doc.problem;
  const Grid g(opts.grid.value_or(doc.options.grid.value_or(kDefaultGrid)));
  CommandResult out;
  Json& r = out.report;
  r["command"] = to_string(cmd);
  r["kind"] = p.semilinear() ? "semilinear" : "polyhedral2";
  r["kappa"] = p.kappa();
  r["n"] = p.n();
  r["N"] = g.N;
  r["status"] = "ok";
  try {
    switch (cmd) {
      case Command::SolvePrimal: {
        const auto sol = transcription::solve_primal(p, g);
        r["value"] = number(sol.value);
        r["iterations"] = sol.lp.iterations;
        r["trajectory"] = primal_json(sol.trajectory);
        out.csv = primal_csv(sol.trajectory);
        break;
      }
      case Command::SolveDual: {
        const auto sol = transcription::solve_dual(p, g);
        r["value"] = number(sol.value);
        r["iterations"] = sol.lp.iterations;
        r["dual"] = serialize_dual(sol.trajectory);
        out.csv = dual_csv(sol.trajectory);
        break;
      }
      case Command::Gap: {
        const double primal = transcription::solve_primal(p, g).value;
        const double dual = transcription::solve_dual(p, g).value;
        const double gap = std::fabs(primal - dual);
        const double tol = doc.options.gap_tol.value_or(1e-6 * (1.0 + std::fabs(primal)));
        r["primal"] = number(primal);
        r["dual"] = number(dual);
        r["gap"] = number(gap);
        r["tolerance"] = number(tol);
        r["pass"] = gap <= tol;
        out.csv = "N,primal,dual,gap\n" + std::to_string(g.N) + "," + csv_num(primal) + "," +
                  csv_num(dual) + "," + csv_num(gap) + "\n";
        if (gap > tol) out.exit_code = kCertificateFailure;
        break;
      }
      case Command::Certify: {
        const auto sol = transcription::solve_primal(p, g);
        transcription::DualTrajectory d;
        if (opts.dual) {
          d = *opts.dual;
          if (d.grid.N != g.N)
            throw std::invalid_argument("dual file has N=" + std::to_string(d.grid.N) +
                                        " but the grid is N=" + std::to_string(g.N));
          r["dual_source"] = "file";
        } else {
          d = transcription::extract_dual_trajectory(sol.lp, p, g);
          r["dual_source"] = "primal multipliers";
        }
        const double tau = opts.tol.value_or(doc.options.certificate_tol.value_or(certify::default_tolerance(g)));
        const double gap_tol = doc.options.gap_tol.value_or(tau);
        const auto rep = certify::certify(p, sol.trajectory, d, tau, gap_tol);
        r["tolerance"] = number(tau);
        r["pass"] = rep.pass;
        r["primal"] = number(rep.primal_value);
        r["dual"] = number(rep.dual_value);
        r["gap"] = number(rep.gap);
        r["degenerate"] = rep.degenerate;
        Json entries = Json::array();
        Json failing = Json::array();
        for (const auto& e : rep.entries) {
          entries.push_back(entry_json(e));
          if (!e.pass) failing.push_back(e.name);
        }
        r["entries"] = entries;
        r["failing"] = failing;
        out.csv = dual_csv(d);
        if (!rep.pass) out.exit_code = kCertificateFailure;
        break;
      }
      case Command::Adjoint:
        r["adjoint"] = adjoint_json(p);
        break;
      case Command::Oracle:
        oracle(p, g, r, out);
        break;
    }
  } catch (const std::exception& e) {
    r["status"] = "error";
    r["error"] = e.what();
    out.csv.clear();
    out.exit_code = kFailure;
  }
  return out;
}

}  // namespace dualdfi::cli
