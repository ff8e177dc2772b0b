#include "dualdfi/dfi/calculus.hpp"

#include <cmath>
#include <stdexcept>

#include "dualdfi/numerics/lp.hpp"

namespace dualdfi::dfi {

using numerics::LPProblem;
using numerics::LPStatus;
using numerics::Sense;

namespace {

void check_stack(const Stack& z, std::size_t count, std::size_t n, const char* what) {
  numerics::require_size(z.size(), count, what);
  for (const Vector& v : z) numerics::require_size(v.size(), n, what);
}

// A_0 x + sum_j A_j v_j
Vector drift(const SemilinearMap& f, const Stack& z) {
  Vector a(f.n, 0.0);
  for (std::size_t j = 0; j < f.kappa; ++j) {
    const Vector t = f.A[j].multiply(z[j]);
    for (std::size_t i = 0; i < f.n; ++i) a[i] += t[i];
  }
  return a;
}

// d - A x - B v1, the right-hand side of -C v <= . in F(x, v1)
Vector polyhedral_rhs(const PolyhedralMap2& f, const Stack& z) {
  Vector r = f.d;
  const Vector ax = f.A.multiply(z[0]);
  const Vector bv = f.B.multiply(z[1]);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= ax[i] + bv[i];
  return r;
}

Matrix negated(const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = -m(i, j);
  return out;
}

double semilinear_distance(const SemilinearMap& f, const Stack& z, const Vector& v) {
  // min t over (u, t): |v - a - B u|_inf <= t, u in U
  const Vector a = drift(f, z);
  const std::size_t r = f.r;
  const std::size_t rows_u = f.U.rows();
  LPProblem lp;
  lp.cost.assign(r + 1, 0.0);
  lp.cost[r] = 1.0;
  lp.ineq = Matrix(2 * f.n + rows_u, r + 1);
  lp.ineq_rhs.assign(2 * f.n + rows_u, 0.0);
  for (std::size_t i = 0; i < f.n; ++i) {
    const double w = v[i] - a[i];
    for (std::size_t k = 0; k < r; ++k) {
      lp.ineq(2 * i, k) = -f.B(i, k);
      lp.ineq(2 * i + 1, k) = f.B(i, k);
    }
    lp.ineq(2 * i, r) = -1.0;
    lp.ineq(2 * i + 1, r) = -1.0;
    lp.ineq_rhs[2 * i] = -w;
    lp.ineq_rhs[2 * i + 1] = w;
  }
  for (std::size_t i = 0; i < rows_u; ++i) {
    for (std::size_t k = 0; k < r; ++k) lp.ineq(2 * f.n + i, k) = f.U.g()(i, k);
    lp.ineq_rhs[2 * f.n + i] = f.U.h()[i];
  }
  lp.eq = Matrix(0, r + 1);
  const auto sol = numerics::solve_lp(lp);
  if (sol.status != LPStatus::Optimal) throw std::logic_error("inclusion_distance: LP failed");
  return std::fmax(0.0, sol.value);
}

const char* kSub[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};

std::string subscript(std::size_t k) {
  const std::string digits = std::to_string(k);
  std::string out;
  for (char c : digits) out += kSub[c - '0'];
  return out;
}

std::string xstar_derivative(std::size_t d) {
  switch (d) {
    case 0: return "x*";
    case 1: return "x*′";
    case 2: return "x*″";
    case 3: return "x*‴";
    default: return "x*^(" + std::to_string(d) + ")";
  }
}

std::string render(const std::vector<AdjointTerm>& terms) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (i == 0) out += t.sign < 0 ? "−" : "";
    else out += t.sign < 0 ? " − " : " + ";
    out += "A" + subscript(t.matrix) + "ᵀ" + xstar_derivative(t.derivative);
  }
  return out;
}

Vector apply(const AdjointSystem& s, const std::vector<AdjointTerm>& terms,
             const std::vector<Vector>& derivs) {
  const std::size_t n = s.AT.empty() ? 0 : s.AT.front().rows();
  Vector out(n, 0.0);
  for (const auto& t : terms) {
    const Vector v = s.AT[t.matrix].multiply(derivs.at(t.derivative));
    for (std::size_t i = 0; i < n; ++i) out[i] += t.sign * v[i];
  }
  return out;
}

}  // namespace

double hamiltonian(const Inclusion& f, const Stack& z, const Vector& vstar) {
  const std::size_t n = state_dim(f);
  check_stack(z, order(f), n, "hamiltonian: z");
  numerics::require_size(vstar.size(), n, "hamiltonian: vstar");
  if (const auto* s = std::get_if<SemilinearMap>(&f)) {
    double h = 0.0;
    for (std::size_t j = 0; j < s->kappa; ++j)
      h += numerics::dot(z[j], s->A[j].transpose_multiply(vstar));
    return h + convex::support_function(s->U, s->B.transpose_multiply(vstar)).value;
  }
  const auto& p = std::get<PolyhedralMap2>(f);
  LPProblem lp;
  lp.sense = Sense::Maximize;
  lp.cost = vstar;
  lp.ineq = negated(p.C);
  lp.ineq_rhs = polyhedral_rhs(p, z);
  lp.eq = Matrix(0, n);
  const auto sol = numerics::solve_lp(lp);
  if (sol.status == LPStatus::Infeasible) return -numerics::kInf;
  if (sol.status == LPStatus::Unbounded) return numerics::kInf;
  return sol.value;
}

double inclusion_distance(const Inclusion& f, const Stack& z, const Vector& v) {
  const std::size_t n = state_dim(f);
  check_stack(z, order(f), n, "inclusion_distance: z");
  numerics::require_size(v.size(), n, "inclusion_distance: v");
  if (const auto* s = std::get_if<SemilinearMap>(&f)) return semilinear_distance(*s, z, v);
  const auto& p = std::get<PolyhedralMap2>(f);
  const Vector rhs = polyhedral_rhs(p, z);
  const Vector cv = p.C.multiply(v);
  double worst = 0.0;
  for (std::size_t i = 0; i < rhs.size(); ++i) worst = std::fmax(worst, -cv[i] - rhs[i]);
  return worst;
}

bool argmax_contains(const Inclusion& f, const Stack& z, const Vector& v, const Vector& vstar,
                     double tol, double feas_tol) {
  const double h = hamiltonian(f, z, vstar);
  if (!std::isfinite(h)) throw std::domain_error("argmax undefined");
  if (inclusion_distance(f, z, v) > feas_tol) return false;
  return numerics::dot(v, vstar) >= h - tol;
}

bool lam_contains(const Inclusion& f, const Vector& vstar, const Stack& z, const Vector& v,
                  const Stack& candidate, double tol, double feas_tol) {
  const std::size_t n = state_dim(f);
  const std::size_t k = order(f);
  check_stack(candidate, k, n, "lam_contains: candidate");
  if (inclusion_distance(f, z, v) > feas_tol)
    throw std::invalid_argument("lam_contains: v is not in F(z)");

  if (const auto* s = std::get_if<SemilinearMap>(&f)) {
    if (!argmax_contains(f, z, v, vstar, tol, feas_tol)) return false;
    for (std::size_t j = 0; j < k; ++j) {
      const Vector expect = s->A[j].transpose_multiply(vstar);
      if (numerics::norm_inf(numerics::subtract(candidate[j], expect)) > tol) return false;
    }
    return true;
  }

  // Smallest t such that some lambda >= 0 meets x* = -A^T lambda,
  // v1* = -B^T lambda, v* = -C^T lambda and <row slack, lambda> = 0 within t.
  const auto& p = std::get<PolyhedralMap2>(f);
  const std::size_t s = p.s();
  Vector slack = numerics::scaled(polyhedral_rhs(p, z), -1.0);
  const Vector cv = p.C.multiply(v);
  for (std::size_t i = 0; i < s; ++i) slack[i] -= cv[i];

  std::vector<std::pair<Vector, double>> eqs;  // coefficient row over lambda, target
  const Matrix* mats[3] = {&p.A, &p.B, &p.C};
  const Vector* targets[3] = {&candidate[0], &candidate[1], &vstar};
  for (int m = 0; m < 3; ++m)
    for (std::size_t j = 0; j < n; ++j) {
      Vector row(s);
      for (std::size_t i = 0; i < s; ++i) row[i] = (*mats[m])(i, j);
      eqs.emplace_back(std::move(row), -(*targets[m])[j]);
    }
  eqs.emplace_back(slack, 0.0);

  LPProblem lp;
  lp.cost.assign(s + 1, 0.0);
  lp.cost[s] = 1.0;
  lp.ineq = Matrix(2 * eqs.size() + s, s + 1);
  lp.ineq_rhs.assign(2 * eqs.size() + s, 0.0);
  for (std::size_t e = 0; e < eqs.size(); ++e) {
    for (std::size_t i = 0; i < s; ++i) {
      lp.ineq(2 * e, i) = eqs[e].first[i];
      lp.ineq(2 * e + 1, i) = -eqs[e].first[i];
    }
    lp.ineq(2 * e, s) = -1.0;
    lp.ineq(2 * e + 1, s) = -1.0;
    lp.ineq_rhs[2 * e] = eqs[e].second;
    lp.ineq_rhs[2 * e + 1] = -eqs[e].second;
  }
  for (std::size_t i = 0; i < s; ++i) lp.ineq(2 * eqs.size() + i, i) = -1.0;
  lp.eq = Matrix(0, s + 1);
  const auto sol = numerics::solve_lp(lp);
  return sol.status == LPStatus::Optimal && sol.value <= tol;
}

MValue m_value(const Inclusion& f, const Stack& wstar) {
  const std::size_t n = state_dim(f);
  const std::size_t k = order(f);
  check_stack(wstar, k + 1, n, "m_value: wstar");
  const Vector& vstar = wstar[k];
  if (const auto* s = std::get_if<SemilinearMap>(&f)) {
    const double m_tol = 1e-7 * (1.0 + numerics::norm2(vstar));
    for (std::size_t j = 0; j < k; ++j) {
      const Vector expect = s->A[j].transpose_multiply(vstar);
      if (numerics::norm_inf(numerics::subtract(wstar[j], expect)) > m_tol)
        return {-numerics::kInf, {}};
    }
    return {-convex::support_function(s->U, s->B.transpose_multiply(vstar)).value, {}};
  }
  const auto& p = std::get<PolyhedralMap2>(f);
  const std::size_t rows = p.s();
  LPProblem lp;
  lp.cost.resize(3 * n);
  for (std::size_t j = 0; j < n; ++j) {
    lp.cost[j] = wstar[0][j];
    lp.cost[n + j] = wstar[1][j];
    lp.cost[2 * n + j] = -vstar[j];
  }
  lp.ineq = Matrix(rows, 3 * n);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      lp.ineq(i, j) = p.A(i, j);
      lp.ineq(i, n + j) = p.B(i, j);
      lp.ineq(i, 2 * n + j) = -p.C(i, j);
    }
  lp.ineq_rhs = p.d;
  lp.eq = Matrix(0, 3 * n);
  const auto sol = numerics::solve_lp(lp);
  if (sol.status == LPStatus::Unbounded) return {-numerics::kInf, {}};
  if (sol.status == LPStatus::Infeasible) return {numerics::kInf, {}};
  return {sol.value, sol.ineq_multipliers};
}

AdjointSystem adjoint_system(const SemilinearMap& f) {
  AdjointSystem s;
  s.kappa = f.kappa;
  s.lhs_sign = f.kappa % 2 == 0 ? 1 : -1;
  for (std::size_t j = 0; j < f.kappa; ++j) {
    s.ode.push_back({j, j % 2 == 0 ? 1 : -1, j});
    s.AT.push_back(f.A[j].transpose());
  }
  for (std::size_t j = 1; j < f.kappa; ++j) {
    std::vector<AdjointTerm> terms;
    for (std::size_t i = 0; i < j; ++i) terms.push_back({i, i % 2 == 0 ? 1 : -1, f.kappa - j + i});
    s.eta.push_back(std::move(terms));
  }
  return s;
}

std::string AdjointSystem::text() const {
  std::string out;
  for (std::size_t j = 1; j < kappa; ++j)
    out += "η" + subscript(j) + "* = " + render(eta[j - 1]) + "; ";
  out += (lhs_sign < 0 ? "−" : "") + xstar_derivative(kappa) + " = " + render(ode);
  return out;
}

Vector AdjointSystem::eta_value(std::size_t j, const std::vector<Vector>& derivs) const {
  if (j == 0 || j >= kappa) throw std::out_of_range("eta_value: j must be in 1..kappa-1");
  return apply(*this, eta[j - 1], derivs);
}

Vector AdjointSystem::ode_residual(const std::vector<Vector>& derivs) const {
  Vector r = apply(*this, ode, derivs);
  const Vector& top = derivs.at(kappa);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = lhs_sign * top[i] - r[i];
  return r;
}

}  // namespace dualdfi::dfi
