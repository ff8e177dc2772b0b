#include "dualdfi/convex/polytope.hpp"

#include <cmath>
#include <stdexcept>

#include "dualdfi/numerics/enumeration.hpp"

namespace dualdfi::convex {

using numerics::LPProblem;
using numerics::LPStatus;
using numerics::Sense;

namespace {

numerics::LPSolution optimize_over(const Polytope& q, const Vector& c, Sense sense) {
  LPProblem lp;
  lp.sense = sense;
  lp.cost = c;
  lp.ineq = q.g();
  lp.ineq_rhs = q.h();
  lp.eq = Matrix(0, q.dim());
  return numerics::solve_lp(lp);
}

}  // namespace

Polytope::Polytope(Matrix g, Vector h) : dim_(g.cols()), g_(std::move(g)), h_(std::move(h)) {
  numerics::require_size(h_.size(), g_.rows(), "Polytope: h");
  if (!g_.all_finite() || !numerics::all_finite(h_))
    throw std::invalid_argument("Polytope: non-finite entry");
  if (optimize_over(*this, Vector(dim_, 0.0), Sense::Minimize).status == LPStatus::Infeasible)
    throw std::invalid_argument("Polytope: empty set");
  bounded_ = true;
  for (std::size_t i = 0; i < dim_ && bounded_; ++i)
    for (double s : {1.0, -1.0}) {
      Vector e(dim_, 0.0);
      e[i] = s;
      if (optimize_over(*this, e, Sense::Maximize).status == LPStatus::Unbounded) {
        bounded_ = false;
        break;
      }
    }
}

Polytope::Polytope(std::size_t dim) : dim_(dim), g_(0, dim), bounded_(dim == 0) {}

Polytope Polytope::box(const Vector& lo, const Vector& hi) {
  numerics::require_size(hi.size(), lo.size(), "Polytope::box");
  const std::size_t n = lo.size();
  Matrix g(2 * n, n);
  Vector h(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    g(2 * i, i) = 1.0;
    h[2 * i] = hi[i];
    g(2 * i + 1, i) = -1.0;
    h[2 * i + 1] = -lo[i];
  }
  return Polytope(std::move(g), std::move(h));
}

Polytope Polytope::point(const Vector& x) { return box(x, x); }

double Polytope::violation(const Vector& x) const {
  numerics::require_size(x.size(), dim_, "Polytope::violation");
  double v = 0.0;
  for (std::size_t i = 0; i < rows(); ++i) v = std::fmax(v, numerics::dot(g_.row(i), x) - h_[i]);
  return v;
}

std::vector<Vector> Polytope::vertices() const { return numerics::enumerate_vertices(g_, h_); }

SupportValue support_function(const Polytope& q, const Vector& p) {
  numerics::require_size(p.size(), q.dim(), "support_function");
  const auto sol = optimize_over(q, p, Sense::Maximize);
  if (sol.status == LPStatus::Unbounded) return {numerics::kInf, std::nullopt};
  if (sol.status != LPStatus::Optimal) throw std::logic_error("support_function: empty polytope");
  return {sol.value, sol.x};
}

double dual_cone_violation(const Polytope& q, const Vector& x, const Vector& p, double feas_tol) {
  numerics::require_size(p.size(), q.dim(), "dual_cone_violation");
  if (q.violation(x) > feas_tol * (1.0 + numerics::norm_inf(q.h())))
    throw std::invalid_argument("dual_cone_violation: point is not in the set");
  const Vector minus_p = numerics::scaled(p, -1.0);
  const double w = support_function(q, minus_p).value;
  if (std::isinf(w)) return numerics::kInf;
  return std::fmax(0.0, numerics::dot(p, x) + w);
}

bool dual_cone_contains(const Polytope& q, const Vector& x, const Vector& p, double tol) {
  return dual_cone_violation(q, x, p) <= tol;
}

}  // namespace dualdfi::convex
