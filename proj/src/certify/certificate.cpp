#include "dualdfi/certify/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "dualdfi/dfi/calculus.hpp"

namespace dualdfi::certify {

using numerics::kInf;
using numerics::Vector;
using transcription::finite_difference;

namespace {

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

void require_same_grid(const PrimalTrajectory& x, const DualTrajectory& d) {
  if (!(x.grid == d.grid)) throw std::invalid_argument("certificate: primal and dual grids differ");
}

CertificateEntry entry(std::string name, double residual, double tol, std::string details) {
  CertificateEntry e;
  e.name = std::move(name);
  e.residual = std::isnan(residual) ? kInf : std::fmax(0.0, residual);
  e.tolerance = tol;
  e.pass = e.residual <= tol;
  e.details = std::move(details);
  return e;
}

double norm2(const Vector& v) { return numerics::norm2(v); }

// Interval k's lambda stands in for node k+1; node 0 borrows interval 0.
const Vector& lambda_at_node(const DualTrajectory& d, std::size_t k) {
  return d.lambda[k == 0 ? 0 : k - 1];
}

}  // namespace

const CertificateEntry* CertificateReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

double default_tolerance(const Grid& g) { return std::fmax(1e-6, 5.0 * g.h()); }

double adjoint_residual(const dfi::MayerProblem& p, const DualTrajectory& d) {
  transcription::check_shape(p, d);
  const std::size_t N = d.grid.N;
  const double h = d.grid.h();
  double worst = 0.0;
  if (p.semilinear()) {
    const std::size_t kappa = p.kappa();
    if (N < kappa || N < 2) return 0.0;
    const auto sys = dfi::adjoint_system(p.semilinear_map());
    std::vector<std::vector<Vector>> derivs;
    for (std::size_t o = 0; o <= kappa; ++o) derivs.push_back(finite_difference(d.xstar, o, h));
    for (std::size_t k = 1; k < N; ++k) {
      std::vector<Vector> at;
      for (const auto& dv : derivs) at.push_back(dv[k]);
      worst = std::fmax(worst, norm2(sys.ode_residual(at)));
    }
    return worst;
  }
  const auto& f = p.polyhedral_map();
  // Samples at t_1..t_N; second differences need three of them.
  if (d.lambda.size() < 3) return 0.0;
  const std::size_t M = d.lambda.size();
  const auto l1 = finite_difference(d.lambda, 1, h);
  const auto l2 = finite_difference(d.lambda, 2, h);
  for (std::size_t k = 1; k + 1 < M; ++k) {
    Vector r = f.C.transpose_multiply(l2[k]);
    const Vector b = f.B.transpose_multiply(l1[k]);
    const Vector a = f.A.transpose_multiply(d.lambda[k]);
    for (std::size_t c = 0; c < r.size(); ++c) r[c] += b[c] - a[c];
    worst = std::fmax(worst, norm2(r));
  }
  return worst;
}

CertificateEntry check_euler_lagrange(const dfi::MayerProblem& p, const PrimalTrajectory& x,
                                      const DualTrajectory& d, double tol) {
  require_same_grid(x, d);
  transcription::check_shape(p, d);
  const std::size_t N = d.grid.N;
  const double ode = adjoint_residual(p, d);
  double consistency = 0.0;
  if (p.semilinear()) {
    const std::size_t kappa = p.kappa();
    if (kappa >= 2 && N + 1 >= kappa) {
      const auto sys = dfi::adjoint_system(p.semilinear_map());
      std::vector<std::vector<Vector>> derivs;
      for (std::size_t o = 0; o + 1 < kappa; ++o)
        derivs.push_back(finite_difference(d.xstar, o, d.grid.h()));
      for (std::size_t k = 0; k <= N; ++k) {
        std::vector<Vector> at;
        for (const auto& dv : derivs) at.push_back(dv[k]);
        for (std::size_t j = 1; j < kappa; ++j)
          consistency = std::fmax(
              consistency, norm2(numerics::subtract(d.eta[j - 1][k], sys.eta_value(j, at))));
      }
    }
    return entry("euler_lagrange", std::fmax(ode, consistency), tol,
                 fmt("adjoint ode residual %.3e, eta deviation %.3e", ode, consistency));
  }
  const auto& f = p.polyhedral_map();
  for (std::size_t k = 0; k <= N; ++k) {
    const Vector& lam = lambda_at_node(d, k);
    consistency = std::fmax(consistency, norm2(numerics::add(d.xstar[k], f.C.transpose_multiply(lam))));
    consistency = std::fmax(consistency, norm2(numerics::add(d.eta[0][k], f.B.transpose_multiply(lam))));
  }
  return entry("euler_lagrange", std::fmax(ode, consistency), tol,
               fmt("lambda equation residual %.3e, x*/eta consistency %.3e", ode, consistency));
}

std::vector<CertificateEntry> check_transversality(const dfi::MayerProblem& p,
                                                   const PrimalTrajectory& x,
                                                   const DualTrajectory& d, double tol) {
  require_same_grid(x, d);
  transcription::check_shape(p, x);
  const auto vals = transcription::dual_argument_values(p, d);
  std::vector<CertificateEntry> out;

  double t0 = 0.0;
  std::string t0_details = "all initial conditions hold";
  for (std::size_t i = 0; i < p.kappa(); ++i) {
    double r;
    try {
      r = convex::dual_cone_violation(p.Q[i], x.z[0][i], numerics::scaled(vals.g3[i], -1.0));
    } catch (const std::invalid_argument&) {
      r = kInf;
    }
    if (r > t0) {
      t0 = r;
      t0_details = "initial set " + std::to_string(i) + fmt(": normal cone violation %.3e", r);
    }
  }
  out.push_back(entry("transversality_t0", t0, tol, t0_details));

  const Vector zN = x.stacked(d.grid.N);
  const double dist = convex::subgradient_distance(p.phi, zN, vals.g1);
  const double young = convex::young_residual(p.phi, zN, vals.g1);
  out.push_back(entry("transversality_t1", std::fmax(dist, young), tol,
                      fmt("subgradient distance %.3e, Young residual %.3e", dist, young)));
  return out;
}

CertificateEntry check_maximum_condition(const dfi::MayerProblem& p, const PrimalTrajectory& x,
                                         const DualTrajectory& d, double tol) {
  require_same_grid(x, d);
  transcription::check_shape(p, x);
  transcription::check_shape(p, d);
  const std::size_t N = d.grid.N;
  double worst = 0.0;
  std::size_t where = 0;
  if (p.semilinear()) {
    const auto& f = p.semilinear_map();
    for (std::size_t k = 0; k < N; ++k) {
      const Vector& vs = d.xstar[k + 1];
      const double w = convex::support_function(f.U, f.B.transpose_multiply(vs)).value;
      const double r = w - numerics::dot(f.B.multiply(x.u[k]), vs);
      if (r > worst) {
        worst = r;
        where = k;
      }
    }
    return entry("maximum_condition", worst, tol,
                 fmt("largest support gap %.3e on interval %.0f", worst, double(where)));
  }
  const auto& f = p.polyhedral_map();
  double negativity = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    Vector slack = numerics::add(f.A.multiply(x.z[k][0]), f.B.multiply(x.z[k][1]));
    const Vector cv = f.C.multiply(x.v[k]);
    for (std::size_t i = 0; i < slack.size(); ++i) slack[i] -= cv[i] + f.d[i];
    const double r = std::fabs(numerics::dot(slack, d.lambda[k]));
    if (r > worst) {
      worst = r;
      where = k;
    }
    for (double l : d.lambda[k]) negativity = std::fmax(negativity, -l);
  }
  return entry("maximum_condition", std::fmax(worst, negativity), tol,
               fmt("complementarity %.3e, lambda negativity %.3e", worst, negativity));
}

WeakDuality check_weak_duality(const dfi::MayerProblem& p, const PrimalTrajectory& x,
                               const DualTrajectory& d) {
  WeakDuality w;
  w.primal = transcription::evaluate_primal_objective(p, x);
  w.dual = transcription::evaluate_dual_objective(p, d);
  w.gap = w.primal - w.dual;
  const double scale = std::isfinite(w.dual) ? std::fmax(std::fabs(w.primal), std::fabs(w.dual))
                                             : std::fabs(w.primal);
  w.pass = w.gap >= -1e-6 * (1.0 + scale);
  return w;
}

double duality_gap(const dfi::MayerProblem& p, const Grid& g, const numerics::SimplexOptions& opts) {
  const double primal = transcription::solve_primal(p, g, opts).value;
  const double dual = transcription::solve_dual(p, g, opts).value;
  return std::fabs(primal - dual);
}

CertificateReport certify(const dfi::MayerProblem& p, const PrimalTrajectory& x,
                          const DualTrajectory& d, double tol, double gap_tol) {
  CertificateReport r;
  r.entries.push_back(check_euler_lagrange(p, x, d, tol));
  for (auto& e : check_transversality(p, x, d, tol)) r.entries.push_back(std::move(e));
  r.entries.push_back(check_maximum_condition(p, x, d, tol));

  const double feas = transcription::primal_violation(p, x);
  r.entries.push_back(entry("primal_feasibility", feas, 1e-8, fmt("largest violation %.3e", feas)));

  const auto w = check_weak_duality(p, x, d);
  r.primal_value = w.primal;
  r.dual_value = w.dual;
  r.gap = w.gap;
  CertificateEntry wd = entry("weak_duality", w.pass ? 0.0 : -w.gap, 1e-6 * (1.0 + std::fabs(w.primal)),
                              fmt("primal %.17g, dual %.17g", w.primal, w.dual));
  wd.pass = w.pass;
  r.entries.push_back(std::move(wd));
  if (gap_tol >= 0.0)
    r.entries.push_back(entry("duality_gap", w.gap, gap_tol, fmt("primal - dual = %.3e", w.gap)));
  r.degenerate = d.degenerate;
  r.pass = std::all_of(r.entries.begin(), r.entries.end(), [](const auto& e) { return e.pass; });
  return r;
}

}  // namespace dualdfi::certify
