#include "dualdfi/convex/piecewise.hpp"

#include <cmath>
#include <stdexcept>

#include "dualdfi/numerics/lp.hpp"

namespace dualdfi::convex {

using numerics::LPProblem;
using numerics::LPStatus;

PiecewiseMaxAffine::PiecewiseMaxAffine(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw std::invalid_argument("PiecewiseMaxAffine: needs at least one piece");
  const std::size_t d = pieces_.front().c.size();
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    numerics::require_size(pieces_[i].c.size(), d, "PiecewiseMaxAffine: piece " + std::to_string(i));
    if (!numerics::all_finite(pieces_[i].c) || !std::isfinite(pieces_[i].b))
      throw std::invalid_argument("PiecewiseMaxAffine: non-finite piece");
  }
}

double PiecewiseMaxAffine::value(const Vector& z) const {
  numerics::require_size(z.size(), dim(), "PiecewiseMaxAffine::value");
  double v = -numerics::kInf;
  for (const Piece& p : pieces_) v = std::fmax(v, numerics::dot(p.c, z) + p.b);
  return v;
}

std::vector<std::size_t> PiecewiseMaxAffine::active(const Vector& z, double tol) const {
  const double v = value(z);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (numerics::dot(pieces_[i].c, z) + pieces_[i].b >= v - tol) out.push_back(i);
  return out;
}

double PiecewiseMaxAffine::active_tolerance(const Vector& z) const {
  return 1e-7 * (1.0 + std::fabs(value(z)));
}

double conjugate_value(const PiecewiseMaxAffine& phi, const Vector& zstar) {
  numerics::require_size(zstar.size(), phi.dim(), "conjugate_value");
  const std::size_t k = phi.pieces().size();
  const std::size_t d = phi.dim();
  LPProblem lp;
  lp.cost.resize(k);
  lp.ineq = Matrix(k, k);
  lp.ineq_rhs.assign(k, 0.0);
  lp.eq = Matrix(d + 1, k);
  lp.eq_rhs = zstar;
  lp.eq_rhs.push_back(1.0);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& piece = phi.pieces()[i];
    lp.cost[i] = -piece.b;
    lp.ineq(i, i) = -1.0;
    for (std::size_t j = 0; j < d; ++j) lp.eq(j, i) = piece.c[j];
    lp.eq(d, i) = 1.0;
  }
  const auto sol = numerics::solve_lp(lp);
  if (sol.status != LPStatus::Optimal) return numerics::kInf;
  return sol.value;
}

double subgradient_distance(const PiecewiseMaxAffine& phi, const Vector& z, const Vector& g) {
  numerics::require_size(g.size(), phi.dim(), "subgradient_distance");
  const auto act = phi.active(z, phi.active_tolerance(z));
  const std::size_t a = act.size();
  const std::size_t d = phi.dim();
  // Variables (lambda_1..lambda_a, t); minimize t.
  LPProblem lp;
  lp.cost.assign(a + 1, 0.0);
  lp.cost[a] = 1.0;
  lp.ineq = Matrix(2 * d + a, a + 1);
  lp.ineq_rhs.assign(2 * d + a, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < a; ++i) {
      const double c = phi.pieces()[act[i]].c[j];
      lp.ineq(2 * j, i) = c;
      lp.ineq(2 * j + 1, i) = -c;
    }
    lp.ineq(2 * j, a) = -1.0;
    lp.ineq(2 * j + 1, a) = -1.0;
    lp.ineq_rhs[2 * j] = g[j];
    lp.ineq_rhs[2 * j + 1] = -g[j];
  }
  for (std::size_t i = 0; i < a; ++i) lp.ineq(2 * d + i, i) = -1.0;
  lp.eq = Matrix(1, a + 1);
  for (std::size_t i = 0; i < a; ++i) lp.eq(0, i) = 1.0;
  lp.eq_rhs = {1.0};
  const auto sol = numerics::solve_lp(lp);
  if (sol.status != LPStatus::Optimal) throw std::logic_error("subgradient_distance: LP failed");
  return std::fmax(0.0, sol.value);
}

bool subdifferential_contains(const PiecewiseMaxAffine& phi, const Vector& z, const Vector& g,
                              double tol) {
  return subgradient_distance(phi, z, g) <= tol;
}

double young_residual(const PiecewiseMaxAffine& phi, const Vector& z, const Vector& g) {
  const double conj = conjugate_value(phi, g);
  if (std::isinf(conj)) return numerics::kInf;
  return std::fabs(phi.value(z) + conj - numerics::dot(z, g));
}

}  // namespace dualdfi::convex
