#include "dualdfi/transcription/dual.hpp"

#include <algorithm>
#include <cmath>

#include "dualdfi/dfi/calculus.hpp"

namespace dualdfi::transcription {

using numerics::LPStatus;

void LinearForm::add(std::size_t index, double coef) {
  auto it = std::find_if(terms.begin(), terms.end(), [&](const auto& t) { return t.first == index; });
  if (it == terms.end()) {
    if (coef != 0.0) terms.emplace_back(index, coef);
    return;
  }
  it->second += coef;
  if (it->second == 0.0) terms.erase(it);
}

void LinearForm::add(const LinearForm& other, double scale) {
  for (const auto& [i, c] : other.terms) add(i, scale * c);
}

double LinearForm::eval(const Vector& x) const {
  double s = 0.0;
  for (const auto& [i, c] : terms) s += c * x[i];
  return s;
}

namespace {

int parity(std::size_t j) { return j % 2 == 0 ? 1 : -1; }

std::vector<Vector> split(const Vector& v, std::size_t parts, std::size_t n) {
  std::vector<Vector> out(parts, Vector(n));
  for (std::size_t a = 0; a < parts; ++a)
    for (std::size_t c = 0; c < n; ++c) out[a][c] = v[a * n + c];
  return out;
}

// Dense row over `width` columns from a form plus extra (index, coef) terms.
void put_row(Matrix& m, std::size_t row, const LinearForm& f, double scale) {
  for (const auto& [i, c] : f.terms) m(row, i) += scale * c;
}

}  // namespace

DualArguments build_dual_arguments(const dfi::MayerProblem& p, const Grid& g) {
  DualArguments a;
  DualLayout& l = a.layout;
  l.N = g.N;
  l.n = p.n();
  l.kappa = p.kappa();
  const std::size_t n = l.n, kappa = l.kappa, N = l.N;
  const double h = g.h();

  a.p.assign(N + 1, std::vector<LinearForm>(kappa * n));
  for (std::size_t k = 0; k <= N; ++k)
    for (std::size_t i = 0; i < kappa; ++i) {
      const std::size_t j = kappa - 1 - i;
      const Stencil s = backward_stencil(N, k, j, h);
      for (std::size_t c = 0; c < n; ++c) {
        LinearForm& f = a.p[k][i * n + c];
        for (std::size_t w = 0; w < s.weights.size(); ++w)
          f.add(l.xstar(s.first + w, c), parity(j) * s.weights[w]);
        if (j >= 1) f.add(l.eta(j, k, c), -1.0);
      }
    }

  a.g1.assign(kappa * n, {});
  for (std::size_t s = 0; s < kappa * n; ++s) a.g1[s].add(a.p[N][s], -1.0);

  a.g2.assign(N, std::vector<LinearForm>((kappa + 1) * n));
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t i = 0; i < kappa; ++i)
      for (std::size_t c = 0; c < n; ++c) {
        LinearForm& f = a.g2[k][i * n + c];
        f.add(a.p[k][i * n + c], 1.0 / h);
        f.add(a.p[k + 1][i * n + c], -1.0 / h);
        if (i >= 1) f.add(a.p[k + 1][(i - 1) * n + c], -1.0);
      }
    for (std::size_t c = 0; c < n; ++c)
      a.g2[k][kappa * n + c].add(a.p[k + 1][(kappa - 1) * n + c], 1.0);
  }

  a.g3.assign(kappa, std::vector<LinearForm>(n));
  for (std::size_t i = 0; i < kappa; ++i)
    for (std::size_t c = 0; c < n; ++c) a.g3[i][c].add(a.p[0][i * n + c], 1.0);
  return a;
}

Vector pack_dual(const DualLayout& l, const DualTrajectory& d) {
  Vector x(l.size(), 0.0);
  for (std::size_t k = 0; k <= l.N; ++k)
    for (std::size_t c = 0; c < l.n; ++c) x[l.xstar(k, c)] = d.xstar[k][c];
  for (std::size_t j = 1; j < l.kappa; ++j)
    for (std::size_t k = 0; k <= l.N; ++k)
      for (std::size_t c = 0; c < l.n; ++c) x[l.eta(j, k, c)] = d.eta[j - 1][k][c];
  return x;
}

DualTranscription transcribe_dual_direct(const dfi::MayerProblem& p, const Grid& g) {
  p.validate();
  DualTranscription t;
  t.args = build_dual_arguments(p, g);
  const DualArguments& a = t.args;
  const DualLayout& l = a.layout;
  const std::size_t n = l.n, kappa = l.kappa, N = l.N;
  const double h = g.h();
  const auto& pieces = p.phi.pieces();

  std::size_t width = l.size();
  t.phi_begin = width;
  width += pieces.size();
  for (const auto& q : p.Q) {
    t.q_begin.push_back(width);
    width += q.rows();
  }
  t.interval_begin = width;
  t.interval_size = p.semilinear() ? p.semilinear_map().U.rows() : p.polyhedral_map().s();
  width += N * t.interval_size;
  const std::size_t aux = width - l.size();

  std::size_t eq_rows = kappa * n + 1;
  for (std::size_t i = 0; i < kappa; ++i) eq_rows += n;
  eq_rows += N * (p.semilinear() ? kappa * n + p.semilinear_map().r : 3 * n);

  numerics::LPProblem& lp = t.lp;
  lp.sense = numerics::Sense::Maximize;
  lp.cost.assign(width, 0.0);
  lp.eq = Matrix(eq_rows, width);
  lp.eq_rhs.assign(eq_rows, 0.0);
  lp.ineq = Matrix(aux, width);
  lp.ineq_rhs.assign(aux, 0.0);
  for (std::size_t i = 0; i < aux; ++i) lp.ineq(i, l.size() + i) = -1.0;

  std::size_t row = 0;
  // phi*: sum lambda c = g1, sum lambda = 1; objective + sum lambda b
  for (std::size_t s = 0; s < kappa * n; ++s, ++row) {
    for (std::size_t q = 0; q < pieces.size(); ++q) lp.eq(row, t.phi_begin + q) = pieces[q].c[s];
    put_row(lp.eq, row, a.g1[s], -1.0);
  }
  for (std::size_t q = 0; q < pieces.size(); ++q) {
    lp.eq(row, t.phi_begin + q) = 1.0;
    lp.cost[t.phi_begin + q] = pieces[q].b;
  }
  lp.eq_rhs[row++] = 1.0;

  // W_Q: G^T w = g3, objective - h.w
  for (std::size_t i = 0; i < kappa; ++i) {
    const auto& q = p.Q[i];
    for (std::size_t c = 0; c < n; ++c, ++row) {
      for (std::size_t r = 0; r < q.rows(); ++r) lp.eq(row, t.q_begin[i] + r) = q.g()(r, c);
      put_row(lp.eq, row, a.g3[i][c], -1.0);
    }
    for (std::size_t r = 0; r < q.rows(); ++r) lp.cost[t.q_begin[i] + r] = -q.h()[r];
  }

  for (std::size_t k = 0; k < N; ++k) {
    const std::size_t base = t.interval_begin + k * t.interval_size;
    const auto& g2 = a.g2[k];
    auto vstar = [&](std::size_t c) -> const LinearForm& { return g2[kappa * n + c]; };
    if (p.semilinear()) {
      const auto& f = p.semilinear_map();
      // h (X_j - A_j^T v*) = 0
      for (std::size_t j = 0; j < kappa; ++j)
        for (std::size_t c = 0; c < n; ++c, ++row) {
          put_row(lp.eq, row, g2[j * n + c], h);
          for (std::size_t m = 0; m < n; ++m) put_row(lp.eq, row, vstar(m), -h * f.A[j](m, c));
        }
      // G_U^T w = B^T v*, objective - h h_U.w
      for (std::size_t c = 0; c < f.r; ++c, ++row) {
        for (std::size_t r = 0; r < f.U.rows(); ++r) lp.eq(row, base + r) = f.U.g()(r, c);
        for (std::size_t m = 0; m < n; ++m) put_row(lp.eq, row, vstar(m), -f.B(m, c));
      }
      for (std::size_t r = 0; r < f.U.rows(); ++r) lp.cost[base + r] = -h * f.U.h()[r];
    } else {
      const auto& f = p.polyhedral_map();
      const Matrix* mats[3] = {&f.A, &f.B, &f.C};
      // X_0 = -A^T lambda, X_1 = -B^T lambda, v* = -C^T lambda; objective - h d.lambda
      for (std::size_t a3 = 0; a3 < 3; ++a3)
        for (std::size_t c = 0; c < n; ++c, ++row) {
          const double scale = a3 < 2 ? h : 1.0;
          put_row(lp.eq, row, g2[a3 * n + c], scale);
          for (std::size_t r = 0; r < f.s(); ++r) lp.eq(row, base + r) = scale * (*mats[a3])(r, c);
        }
      for (std::size_t r = 0; r < f.s(); ++r) lp.cost[base + r] = -h * f.d[r];
    }
  }
  return t;
}

DualSolution solve_dual(const dfi::MayerProblem& p, const Grid& g,
                        const numerics::SimplexOptions& opts) {
  const auto t = transcribe_dual_direct(p, g);
  DualSolution out;
  out.lp = numerics::solve_lp(t.lp, opts);
  if (out.lp.status != LPStatus::Optimal)
    throw SolveError(out.lp.status, "dual transcription (N=" + std::to_string(g.N) +
                                        "): " + std::string(numerics::to_string(out.lp.status)));
  const DualLayout& l = t.args.layout;
  DualTrajectory& d = out.trajectory;
  d.grid = g;
  d.xstar.assign(l.N + 1, Vector(l.n));
  for (std::size_t k = 0; k <= l.N; ++k)
    for (std::size_t c = 0; c < l.n; ++c) d.xstar[k][c] = out.lp.x[l.xstar(k, c)];
  d.eta.assign(l.kappa - 1, std::vector<Vector>(l.N + 1, Vector(l.n)));
  for (std::size_t j = 1; j < l.kappa; ++j)
    for (std::size_t k = 0; k <= l.N; ++k)
      for (std::size_t c = 0; c < l.n; ++c) d.eta[j - 1][k][c] = out.lp.x[l.eta(j, k, c)];
  if (!p.semilinear()) {
    d.lambda.assign(l.N, Vector(t.interval_size));
    for (std::size_t k = 0; k < l.N; ++k)
      for (std::size_t r = 0; r < t.interval_size; ++r)
        d.lambda[k][r] = out.lp.x[t.interval_begin + k * t.interval_size + r];
  }
  d.degenerate = out.lp.degenerate;
  out.value = out.lp.value;
  return out;
}

DualTrajectory dual_from_adjoint(const dfi::MayerProblem& p, const Grid& g,
                                 const std::vector<std::vector<Vector>>& adj) {
  const std::size_t N = g.N, n = p.n(), kappa = p.kappa();
  numerics::require_size(adj.size(), N + 1, "dual_from_adjoint");
  DualTrajectory d;
  d.grid = g;
  d.xstar.resize(N + 1);
  for (std::size_t k = 0; k <= N; ++k) d.xstar[k] = adj[k].at(kappa - 1);
  d.eta.assign(kappa - 1, std::vector<Vector>(N + 1, Vector(n, 0.0)));
  for (std::size_t j = 1; j < kappa; ++j)
    for (std::size_t k = 0; k <= N; ++k) {
      const Stencil s = backward_stencil(N, k, j, g.h());
      Vector& e = d.eta[j - 1][k];
      for (std::size_t w = 0; w < s.weights.size(); ++w)
        for (std::size_t c = 0; c < n; ++c) e[c] += parity(j) * s.weights[w] * d.xstar[s.first + w][c];
      for (std::size_t c = 0; c < n; ++c) e[c] -= adj[k][kappa - 1 - j][c];
    }
  return d;
}

DualTrajectory extract_dual_trajectory(const numerics::LPSolution& sol, const dfi::MayerProblem& p,
                                       const Grid& g) {
  if (sol.status != LPStatus::Optimal)
    throw std::invalid_argument("extract_dual_trajectory: solution is not Optimal");
  const PrimalLayout l = primal_layout(p, g);
  numerics::require_size(sol.eq_multipliers.size(), l.num_eq(), "extract_dual_trajectory");
  numerics::require_size(sol.ineq_multipliers.size(), l.num_ineq(), "extract_dual_trajectory");
  std::vector<std::vector<Vector>> adj(l.N + 1, std::vector<Vector>(l.kappa, Vector(l.n, 0.0)));
  for (std::size_t k = 0; k < l.N; ++k)
    for (std::size_t j = 0; j < l.kappa; ++j)
      for (std::size_t c = 0; c < l.n; ++c) adj[k + 1][j][c] = sol.eq_multipliers[l.chain_row(k, j, c)];
  for (std::size_t j = 0; j < l.kappa; ++j) {
    const auto& q = p.Q[j];
    for (std::size_t r = 0; r < q.rows(); ++r) {
      const double y = sol.ineq_multipliers[l.q_row(j, r)];
      for (std::size_t c = 0; c < l.n; ++c) adj[0][j][c] += q.g()(r, c) * y;
    }
  }
  DualTrajectory d = dual_from_adjoint(p, g, adj);
  if (!p.semilinear()) {
    const double inv_h = 1.0 / g.h();
    d.lambda.assign(l.N, Vector(l.interval_rows));
    for (std::size_t k = 0; k < l.N; ++k)
      for (std::size_t r = 0; r < l.interval_rows; ++r)
        d.lambda[k][r] = sol.ineq_multipliers[l.interval_row(k, r)] * inv_h;
  }
  d.degenerate = sol.degenerate;
  return d;
}

DualTrajectory semilinear_dual_from_xstar(const dfi::MayerProblem& p, const Grid& g,
                                          const std::vector<Vector>& xstar) {
  const std::size_t N = g.N, kappa = p.kappa();
  numerics::require_size(xstar.size(), N + 1, "semilinear_dual_from_xstar");
  const auto sys = dfi::adjoint_system(p.semilinear_map());
  std::vector<std::vector<Vector>> derivs;  // derivs[order][k]
  for (std::size_t o = 0; o + 1 < kappa; ++o) derivs.push_back(finite_difference(xstar, o, g.h()));
  DualTrajectory d;
  d.grid = g;
  d.xstar = xstar;
  d.eta.assign(kappa - 1, std::vector<Vector>(N + 1));
  for (std::size_t k = 0; k <= N; ++k) {
    std::vector<Vector> at;
    for (const auto& dv : derivs) at.push_back(dv[k]);
    for (std::size_t j = 1; j < kappa; ++j) d.eta[j - 1][k] = sys.eta_value(j, at);
  }
  return d;
}

DualTrajectory polyhedral_dual_from_lambda(const dfi::MayerProblem& p, const Grid& g,
                                           const std::vector<Vector>& lambda_nodes) {
  const std::size_t N = g.N;
  const auto& f = p.polyhedral_map();
  numerics::require_size(lambda_nodes.size(), N + 1, "polyhedral_dual_from_lambda");
  DualTrajectory d;
  d.grid = g;
  d.xstar.resize(N + 1);
  d.eta.assign(1, std::vector<Vector>(N + 1));
  for (std::size_t k = 0; k <= N; ++k) {
    d.xstar[k] = numerics::scaled(f.C.transpose_multiply(lambda_nodes[k]), -1.0);
    d.eta[0][k] = numerics::scaled(f.B.transpose_multiply(lambda_nodes[k]), -1.0);
  }
  d.lambda.assign(lambda_nodes.begin() + 1, lambda_nodes.end());
  return d;
}

DualArgumentValues dual_argument_values(const dfi::MayerProblem& p, const DualTrajectory& d) {
  check_shape(p, d);
  const DualArguments a = build_dual_arguments(p, d.grid);
  const Vector x = pack_dual(a.layout, d);
  const std::size_t n = a.layout.n, kappa = a.layout.kappa;
  auto eval = [&](const std::vector<LinearForm>& forms) {
    Vector v(forms.size());
    for (std::size_t i = 0; i < forms.size(); ++i) v[i] = forms[i].eval(x);
    return v;
  };
  DualArgumentValues out;
  out.g1 = eval(a.g1);
  for (const auto& f : a.g2) out.g2.push_back(eval(f));
  for (const auto& f : a.g3) out.g3.push_back(eval(f));
  for (const auto& f : a.p) out.p.push_back(split(eval(f), kappa, n));
  return out;
}

DualObjective evaluate_dual_objective_terms(const dfi::MayerProblem& p, const DualTrajectory& d) {
  const auto vals = dual_argument_values(p, d);
  const std::size_t n = p.n(), kappa = p.kappa();
  const double h = d.grid.h();
  DualObjective o;
  bool infinite = false;
  const double conj = convex::conjugate_value(p.phi, vals.g1);
  o.conjugate_term = -conj;
  infinite |= std::isinf(conj);
  for (const Vector& g2 : vals.g2) {
    const double m = dfi::m_value(p.F, split(g2, kappa + 1, n)).value;
    o.m_terms.push_back(h * m);
    infinite |= std::isinf(m);
  }
  for (std::size_t i = 0; i < kappa; ++i) {
    const double w = convex::support_function(p.Q[i], vals.g3[i]).value;
    o.support_terms.push_back(-w);
    infinite |= std::isinf(w);
  }
  if (infinite) {
    o.value = -numerics::kInf;
    return o;
  }
  o.value = o.conjugate_term;
  for (double m : o.m_terms) o.value += m;
  for (double w : o.support_terms) o.value += w;
  return o;
}

double evaluate_dual_objective(const dfi::MayerProblem& p, const DualTrajectory& d) {
  return evaluate_dual_objective_terms(p, d).value;
}

double omega_identity(const dfi::MayerProblem& p, const PrimalTrajectory& x,
                      const DualTrajectory& d) {
  check_shape(p, x);
  const auto vals = dual_argument_values(p, d);
  const std::size_t N = d.grid.N, n = p.n(), kappa = p.kappa();
  const double h = d.grid.h();
  double omega = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    const auto parts = split(vals.g2[k], kappa + 1, n);
    double s = 0.0;
    for (std::size_t i = 0; i < kappa; ++i) s += numerics::dot(parts[i], x.z[k][i]);
    s -= numerics::dot(parts[kappa], x.v[k]);
    omega += h * s;
  }
  for (std::size_t i = 0; i < kappa; ++i) {
    omega -= numerics::dot(vals.p[0][i], x.z[0][i]);
    omega += numerics::dot(vals.p[N][i], x.z[N][i]);
  }
  return omega;
}

}  // namespace dualdfi::transcription
