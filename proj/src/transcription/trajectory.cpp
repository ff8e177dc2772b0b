#include "dualdfi/transcription/trajectory.hpp"

#include <cmath>
#include <stdexcept>

#include "dualdfi/dfi/calculus.hpp"

namespace dualdfi::transcription {

Vector PrimalTrajectory::stacked(std::size_t k) const {
  Vector out;
  for (const Vector& v : z.at(k)) out.insert(out.end(), v.begin(), v.end());
  return out;
}

void check_shape(const dfi::MayerProblem& p, const PrimalTrajectory& x) {
  const std::size_t N = x.grid.N;
  const std::size_t n = p.n();
  const std::size_t kappa = p.kappa();
  numerics::require_size(x.z.size(), N + 1, "primal trajectory: z");
  for (const auto& zk : x.z) {
    numerics::require_size(zk.size(), kappa, "primal trajectory: z[k]");
    for (const Vector& v : zk) numerics::require_size(v.size(), n, "primal trajectory: z[k][j]");
  }
  numerics::require_size(x.v.size(), N, "primal trajectory: v");
  for (const Vector& v : x.v) numerics::require_size(v.size(), n, "primal trajectory: v[k]");
  if (p.semilinear()) {
    numerics::require_size(x.u.size(), N, "primal trajectory: u");
    for (const Vector& u : x.u)
      numerics::require_size(u.size(), p.semilinear_map().r, "primal trajectory: u[k]");
  }
}

void check_shape(const dfi::MayerProblem& p, const DualTrajectory& d) {
  const std::size_t N = d.grid.N;
  const std::size_t n = p.n();
  numerics::require_size(d.xstar.size(), N + 1, "dual trajectory: xstar");
  for (const Vector& v : d.xstar) numerics::require_size(v.size(), n, "dual trajectory: xstar[k]");
  numerics::require_size(d.eta.size(), p.kappa() - 1, "dual trajectory: eta");
  for (const auto& e : d.eta) {
    numerics::require_size(e.size(), N + 1, "dual trajectory: eta[j]");
    for (const Vector& v : e) numerics::require_size(v.size(), n, "dual trajectory: eta[j][k]");
  }
  if (!p.semilinear()) {
    numerics::require_size(d.lambda.size(), N, "dual trajectory: lambda");
    for (const Vector& v : d.lambda)
      numerics::require_size(v.size(), p.polyhedral_map().s(), "dual trajectory: lambda[k]");
  }
}

double primal_violation(const dfi::MayerProblem& p, const PrimalTrajectory& x) {
  check_shape(p, x);
  const std::size_t N = x.grid.N;
  const std::size_t kappa = p.kappa();
  const double h = x.grid.h();
  double worst = 0.0;
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t j = 0; j < kappa; ++j) {
      const Vector& next = j + 1 < kappa ? x.z[k][j + 1] : x.v[k];
      for (std::size_t i = 0; i < p.n(); ++i)
        worst = std::fmax(worst, std::fabs(x.z[k + 1][j][i] - x.z[k][j][i] - h * next[i]));
    }
  for (std::size_t k = 0; k < N; ++k) {
    if (p.semilinear()) {
      const auto& f = p.semilinear_map();
      worst = std::fmax(worst, f.U.violation(x.u[k]));
      Vector rhs = f.B.multiply(x.u[k]);
      for (std::size_t j = 0; j < kappa; ++j) {
        const Vector a = f.A[j].multiply(x.z[k][j]);
        for (std::size_t i = 0; i < p.n(); ++i) rhs[i] += a[i];
      }
      worst = std::fmax(worst, numerics::norm_inf(numerics::subtract(x.v[k], rhs)));
    } else {
      worst = std::fmax(worst, dfi::inclusion_distance(p.F, x.z[k], x.v[k]));
    }
  }
  for (std::size_t j = 0; j < kappa; ++j) worst = std::fmax(worst, p.Q[j].violation(x.z[0][j]));
  return worst;
}

}  // namespace dualdfi::transcription
