#pragma once

// Random feasible primal trajectories and dual points on a grid.

#include <random>

#include "dualdfi/numerics/lp.hpp"
#include "dualdfi/transcription/dual.hpp"

namespace samplers {

using dualdfi::convex::Polytope;
using dualdfi::dfi::MayerProblem;
using dualdfi::numerics::LPProblem;
using dualdfi::numerics::LPStatus;
using dualdfi::numerics::Matrix;
using dualdfi::numerics::Vector;
using dualdfi::transcription::DualTrajectory;
using dualdfi::transcription::Grid;
using dualdfi::transcription::PrimalTrajectory;

// Random convex combination of the vertices.
inline Vector random_point(std::mt19937_64& rng, const Polytope& q) {
  const auto verts = q.vertices();
  std::exponential_distribution<double> e(1.0);
  Vector w(verts.size());
  double s = 0.0;
  for (double& x : w) s += (x = e(rng));
  Vector p(q.dim(), 0.0);
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t c = 0; c < q.dim(); ++c) p[c] += w[i] / s * verts[i][c];
  return p;
}

// Adds |x_i| <= r for the first `count` variables.
inline void add_box(LPProblem& lp, std::size_t count, double r) {
  const std::size_t m = lp.num_ineq();
  Matrix g(m + 2 * count, lp.num_vars());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c < lp.num_vars(); ++c) g(i, c) = lp.ineq(i, c);
  for (std::size_t c = 0; c < count; ++c) {
    g(m + 2 * c, c) = 1.0;
    g(m + 2 * c + 1, c) = -1.0;
    lp.ineq_rhs.push_back(r);
    lp.ineq_rhs.push_back(r);
  }
  lp.ineq = std::move(g);
}

// A point of F(z) for the polyhedral map: the smallest sup-norm point mixed
// with a random vertex of F(z) cut to a box around it.
inline Vector random_velocity(std::mt19937_64& rng, const dualdfi::dfi::PolyhedralMap2& f,
                              const Vector& x, const Vector& v1) {
  const std::size_t n = f.n(), s = f.s();
  Vector rhs = f.d;
  const Vector ax = f.A.multiply(x), bv = f.B.multiply(v1);
  for (std::size_t i = 0; i < s; ++i) rhs[i] -= ax[i] + bv[i];
  // min t  s.t. -C v <= rhs, |v_i| <= t
  LPProblem lp;
  lp.cost.assign(n + 1, 0.0);
  lp.cost[n] = 1.0;
  lp.ineq = Matrix(s + 2 * n, n + 1);
  lp.ineq_rhs.assign(s + 2 * n, 0.0);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t c = 0; c < n; ++c) lp.ineq(i, c) = -f.C(i, c);
    lp.ineq_rhs[i] = rhs[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    lp.ineq(s + 2 * c, c) = 1.0;
    lp.ineq(s + 2 * c, n) = -1.0;
    lp.ineq(s + 2 * c + 1, c) = -1.0;
    lp.ineq(s + 2 * c + 1, n) = -1.0;
  }
  lp.eq = Matrix(0, n + 1);
  const auto small = dualdfi::numerics::solve_lp(lp);
  if (small.status != LPStatus::Optimal) throw std::runtime_error("random_velocity: F(z) empty");
  const double r = 2.0 * small.value + 1.0;
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::size_t c = 0; c < n; ++c) {
    lp.cost[c] = g(rng);
    lp.ineq_rhs[s + 2 * c] = r;
    lp.ineq_rhs[s + 2 * c + 1] = r;
    lp.ineq(s + 2 * c, n) = 0.0;
    lp.ineq(s + 2 * c + 1, n) = 0.0;
  }
  lp.cost[n] = 0.0;
  // t is unused now; pin it.
  lp.eq = Matrix(1, n + 1);
  lp.eq(0, n) = 1.0;
  lp.eq_rhs = {0.0};
  const auto far = dualdfi::numerics::solve_lp(lp);
  const double a = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  Vector v(n);
  for (std::size_t c = 0; c < n; ++c) v[c] = (1 - a) * small.x[c] + a * far.x[c];
  return v;
}

inline PrimalTrajectory random_primal(std::mt19937_64& rng, const MayerProblem& p, const Grid& g) {
  const std::size_t N = g.N, kappa = p.kappa(), n = p.n();
  const double h = g.h();
  PrimalTrajectory x;
  x.grid = g;
  x.z.assign(N + 1, std::vector<Vector>(kappa));
  for (std::size_t j = 0; j < kappa; ++j) x.z[0][j] = random_point(rng, p.Q[j]);
  for (std::size_t k = 0; k < N; ++k) {
    Vector v;
    if (p.semilinear()) {
      const auto& f = p.semilinear_map();
      const Vector u = random_point(rng, f.U);
      v = f.B.multiply(u);
      for (std::size_t j = 0; j < kappa; ++j) {
        const Vector a = f.A[j].multiply(x.z[k][j]);
        for (std::size_t c = 0; c < n; ++c) v[c] += a[c];
      }
      x.u.push_back(u);
    } else {
      v = random_velocity(rng, p.polyhedral_map(), x.z[k][0], x.z[k][1]);
    }
    x.v.push_back(v);
    for (std::size_t j = 0; j < kappa; ++j) {
      const Vector& next = j + 1 < kappa ? x.z[k][j + 1] : v;
      x.z[k + 1][j] = x.z[k][j];
      for (std::size_t c = 0; c < n; ++c) x.z[k + 1][j][c] += h * next[c];
    }
  }
  return x;
}

// Vertex of the dual LP feasible set (every variable cut to a box) in a random direction,
// mixed with a second one so that interior points show up too.
inline DualTrajectory unpack_dual_point(const MayerProblem& p, const Grid& g,
                                        const dualdfi::transcription::DualTranscription& t,
                                        const Vector& point) {
  const auto& l = t.args.layout;
  DualTrajectory d;
  d.grid = g;
  d.xstar.assign(l.N + 1, Vector(l.n));
  d.eta.assign(l.kappa - 1, std::vector<Vector>(l.N + 1, Vector(l.n)));
  for (std::size_t k = 0; k <= l.N; ++k)
    for (std::size_t c = 0; c < l.n; ++c) {
      d.xstar[k][c] = point[l.xstar(k, c)];
      for (std::size_t j = 1; j < l.kappa; ++j) d.eta[j - 1][k][c] = point[l.eta(j, k, c)];
    }
  if (!p.semilinear())
    for (std::size_t k = 0; k < l.N; ++k)
      d.lambda.emplace_back(point.begin() + t.interval_begin + k * t.interval_size,
                            point.begin() + t.interval_begin + (k + 1) * t.interval_size);
  return d;
}

inline DualTrajectory random_dual(std::mt19937_64& rng, const MayerProblem& p, const Grid& g,
                                  double box = 20.0) {
  const auto base = dualdfi::transcription::transcribe_dual_direct(p, g);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double a = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  // Grow the box until it meets the feasible set.
  for (; box <= 1e6; box *= 4.0) {
    auto t = base;
    add_box(t.lp, t.lp.num_vars(), box);
    Vector point(t.lp.num_vars(), 0.0);
    bool ok = true;
    for (int rep = 0; rep < 2 && ok; ++rep) {
      for (double& c : t.lp.cost) c = gauss(rng);
      const auto sol = dualdfi::numerics::solve_lp(t.lp);
      ok = sol.status == LPStatus::Optimal;
      const double w = rep == 0 ? a : 1.0 - a;
      if (ok)
        for (std::size_t i = 0; i < point.size(); ++i) point[i] += w * sol.x[i];
    }
    if (ok) return unpack_dual_point(p, g, base, point);
  }
  throw std::runtime_error("random_dual: dual LP infeasible");
}

// Unconstrained random point; most dual terms come out infinite.
inline DualTrajectory random_raw_dual(std::mt19937_64& rng, const MayerProblem& p, const Grid& g) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  DualTrajectory d;
  d.grid = g;
  const std::size_t n = p.n();
  for (std::size_t k = 0; k <= g.N; ++k) {
    Vector v(n);
    for (double& c : v) c = u(rng);
    d.xstar.push_back(v);
  }
  d.eta.assign(p.kappa() - 1, std::vector<Vector>(g.N + 1, Vector(n)));
  for (auto& e : d.eta)
    for (auto& v : e)
      for (double& c : v) c = u(rng);
  if (!p.semilinear()) d.lambda.assign(g.N, Vector(p.polyhedral_map().s(), 0.0));
  return d;
}

}  // namespace samplers
