#include "dualdfi/transcription/primal.hpp"

#include <numeric>

namespace dualdfi::transcription {

using numerics::LPStatus;

std::size_t PrimalLayout::q_row(std::size_t j, std::size_t row) const {
  return std::accumulate(q_rows.begin(), q_rows.begin() + j, std::size_t{0}) + row;
}

std::size_t PrimalLayout::interval_row(std::size_t k, std::size_t row) const {
  return std::accumulate(q_rows.begin(), q_rows.end(), std::size_t{0}) + k * interval_rows + row;
}

std::size_t PrimalLayout::phi_row(std::size_t piece) const { return interval_row(N, 0) + piece; }

PrimalLayout primal_layout(const dfi::MayerProblem& p, const Grid& g) {
  PrimalLayout l;
  l.N = g.N;
  l.n = p.n();
  l.kappa = p.kappa();
  l.semilinear = p.semilinear();
  l.r = l.semilinear ? p.semilinear_map().r : 0;
  l.pieces = p.phi.pieces().size();
  for (const auto& q : p.Q) l.q_rows.push_back(q.rows());
  l.interval_rows = l.semilinear ? p.semilinear_map().U.rows() : p.polyhedral_map().s();
  return l;
}

PrimalTranscription transcribe_primal(const dfi::MayerProblem& p, const Grid& g) {
  p.validate();
  const PrimalLayout l = primal_layout(p, g);
  const double h = g.h();
  numerics::LPProblem lp;
  lp.cost.assign(l.num_vars(), 0.0);
  lp.cost[l.tau()] = 1.0;
  lp.eq = Matrix(l.num_eq(), l.num_vars());
  lp.eq_rhs.assign(l.num_eq(), 0.0);
  lp.ineq = Matrix(l.num_ineq(), l.num_vars());
  lp.ineq_rhs.assign(l.num_ineq(), 0.0);

  // z[k+1][j] - z[k][j] - h z[k][j+1] = 0, with z[k][kappa] = v[k]
  for (std::size_t k = 0; k < l.N; ++k)
    for (std::size_t j = 0; j < l.kappa; ++j)
      for (std::size_t i = 0; i < l.n; ++i) {
        const std::size_t row = l.chain_row(k, j, i);
        lp.eq(row, l.z(k + 1, j, i)) = 1.0;
        lp.eq(row, l.z(k, j, i)) = -1.0;
        lp.eq(row, j + 1 < l.kappa ? l.z(k, j + 1, i) : l.v(k, i)) = -h;
      }

  for (std::size_t j = 0; j < l.kappa; ++j) {
    const auto& q = p.Q[j];
    for (std::size_t row = 0; row < q.rows(); ++row) {
      for (std::size_t i = 0; i < l.n; ++i) lp.ineq(l.q_row(j, row), l.z(0, j, i)) = q.g()(row, i);
      lp.ineq_rhs[l.q_row(j, row)] = q.h()[row];
    }
  }

  if (l.semilinear) {
    const auto& f = p.semilinear_map();
    for (std::size_t k = 0; k < l.N; ++k) {
      // v[k] - sum_j A_j z[k][j] - B u[k] = 0
      for (std::size_t i = 0; i < l.n; ++i) {
        const std::size_t row = l.dynamics_row(k, i);
        lp.eq(row, l.v(k, i)) = 1.0;
        for (std::size_t j = 0; j < l.kappa; ++j)
          for (std::size_t c = 0; c < l.n; ++c) lp.eq(row, l.z(k, j, c)) -= f.A[j](i, c);
        for (std::size_t c = 0; c < l.r; ++c) lp.eq(row, l.u(k, c)) = -f.B(i, c);
      }
      for (std::size_t row = 0; row < f.U.rows(); ++row) {
        for (std::size_t c = 0; c < l.r; ++c) lp.ineq(l.interval_row(k, row), l.u(k, c)) = f.U.g()(row, c);
        lp.ineq_rhs[l.interval_row(k, row)] = f.U.h()[row];
      }
    }
  } else {
    const auto& f = p.polyhedral_map();
    for (std::size_t k = 0; k < l.N; ++k)
      for (std::size_t row = 0; row < f.s(); ++row) {
        const std::size_t r = l.interval_row(k, row);
        for (std::size_t i = 0; i < l.n; ++i) {
          lp.ineq(r, l.z(k, 0, i)) = f.A(row, i);
          lp.ineq(r, l.z(k, 1, i)) = f.B(row, i);
          lp.ineq(r, l.v(k, i)) = -f.C(row, i);
        }
        lp.ineq_rhs[r] = f.d[row];
      }
  }

  // <c_i, z_N> - tau <= -b_i
  for (std::size_t piece = 0; piece < l.pieces; ++piece) {
    const auto& pc = p.phi.pieces()[piece];
    const std::size_t r = l.phi_row(piece);
    for (std::size_t j = 0; j < l.kappa; ++j)
      for (std::size_t i = 0; i < l.n; ++i) lp.ineq(r, l.z(l.N, j, i)) = pc.c[j * l.n + i];
    lp.ineq(r, l.tau()) = -1.0;
    lp.ineq_rhs[r] = -pc.b;
  }
  return {std::move(lp), l};
}

PrimalTrajectory unpack_primal(const PrimalLayout& l, const Grid& g, const Vector& x) {
  numerics::require_size(x.size(), l.num_vars(), "unpack_primal");
  PrimalTrajectory t;
  t.grid = g;
  t.z.assign(l.N + 1, std::vector<Vector>(l.kappa, Vector(l.n)));
  for (std::size_t k = 0; k <= l.N; ++k)
    for (std::size_t j = 0; j < l.kappa; ++j)
      for (std::size_t i = 0; i < l.n; ++i) t.z[k][j][i] = x[l.z(k, j, i)];
  t.v.assign(l.N, Vector(l.n));
  for (std::size_t k = 0; k < l.N; ++k)
    for (std::size_t i = 0; i < l.n; ++i) t.v[k][i] = x[l.v(k, i)];
  if (l.semilinear) {
    t.u.assign(l.N, Vector(l.r));
    for (std::size_t k = 0; k < l.N; ++k)
      for (std::size_t i = 0; i < l.r; ++i) t.u[k][i] = x[l.u(k, i)];
  }
  return t;
}

PrimalSolution solve_primal(const dfi::MayerProblem& p, const Grid& g,
                            const numerics::SimplexOptions& opts) {
  auto tr = transcribe_primal(p, g);
  PrimalSolution out;
  out.lp = numerics::solve_lp(tr.lp, opts);
  out.layout = tr.layout;
  if (out.lp.status != LPStatus::Optimal)
    throw SolveError(out.lp.status, "primal transcription (N=" + std::to_string(g.N) +
                                        "): " + std::string(numerics::to_string(out.lp.status)));
  out.trajectory = unpack_primal(tr.layout, g, out.lp.x);
  out.value = out.lp.value;
  return out;
}

double evaluate_primal_objective(const dfi::MayerProblem& p, const PrimalTrajectory& x) {
  check_shape(p, x);
  return p.phi.value(x.stacked(x.grid.N));
}

}  // namespace dualdfi::transcription
