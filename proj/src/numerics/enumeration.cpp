// Brute-force vertex enumeration. Deliberately shares nothing with the
// simplex code beyond the dense Gaussian elimination, so it can serve as an
// independent check.

#include "dualdfi/numerics/enumeration.hpp"

#include <cmath>

#include "dualdfi/numerics/linalg.hpp"
#include "dualdfi/numerics/lp.hpp"

namespace dualdfi::numerics {
namespace {

double binomial(std::size_t m, std::size_t k) {
  if (k > m) return 0.0;
  double c = 1.0;
  for (std::size_t i = 0; i < k; ++i) c = c * static_cast<double>(m - i) / static_cast<double>(i + 1);
  return c;
}

// Calls f(idx) for each k-subset of {0..m-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t m, std::size_t k, F&& f) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Matrix select_rows(const Matrix& g, const std::vector<std::size_t>& rows) {
  Matrix s(rows.size(), g.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) s(i, j) = g(rows[i], j);
  return s;
}

bool satisfies(const Matrix& g, const Vector& h, const Vector& y) {
  for (std::size_t i = 0; i < g.rows(); ++i) {
    double s = 0.0;
    double mag = std::fabs(h[i]);
    for (std::size_t j = 0; j < g.cols(); ++j) {
      s += g(i, j) * y[j];
      mag += std::fabs(g(i, j) * y[j]);
    }
    if (s > h[i] + 1e-9 * (1.0 + mag)) return false;
  }
  return true;
}

void check_guard(std::size_t m, std::size_t k) {
  if (binomial(m, k) > kEnumerationGuard) throw EnumerationError("too large for enumeration");
}

// g has full column rank.
std::vector<Vector> vertices_full_rank(const Matrix& g, const Vector& h, double vertex_tol) {
  const std::size_t m = g.rows();
  const std::size_t d = g.cols();
  check_guard(m, d);
  std::vector<Vector> out;
  for_each_subset(m, d, [&](const std::vector<std::size_t>& rows) {
    Vector rhs(d);
    for (std::size_t i = 0; i < d; ++i) rhs[i] = h[rows[i]];
    auto y = solve_square(select_rows(g, rows), rhs, 1e-10, kernels::scalar_table());
    if (!y || !satisfies(g, h, *y)) return;
    for (const Vector& v : out)
      if (norm_inf(subtract(v, *y)) <= vertex_tol) return;
    out.push_back(std::move(*y));
  });
  return out;
}

// Nonzero direction r with g r <= 0, if any. Extreme rays of the pointed
// cone are cut out by d-1 independent rows.
bool has_recession_direction(const Matrix& g) {
  const std::size_t m = g.rows();
  const std::size_t d = g.cols();
  check_guard(m, d - 1);
  bool found = false;
  for_each_subset(m, d - 1, [&](const std::vector<std::size_t>& rows) {
    if (found) return;
    const auto aff = solve_affine(select_rows(g, rows), Vector(rows.size(), 0.0));
    if (aff.nullspace.cols() != 1) return;
    Vector r(d);
    for (std::size_t j = 0; j < d; ++j) r[j] = aff.nullspace(j, 0);
    const double scale = norm_inf(r);
    for (double& v : r) v /= scale;
    for (double s : {1.0, -1.0}) {
      bool ok = true;
      for (std::size_t i = 0; i < m && ok; ++i) {
        double gi = 0.0, mag = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          gi += s * g(i, j) * r[j];
          mag += std::fabs(g(i, j));
        }
        ok = gi <= 1e-10 * (1.0 + mag);
      }
      if (ok) found = true;
    }
  });
  return found;
}

}  // namespace

std::vector<Vector> enumerate_vertices(const Matrix& g, const Vector& h, double vertex_tol) {
  require_size(h.size(), g.rows(), "enumerate_vertices");
  const std::size_t d = g.cols();
  check_guard(g.rows(), d);
  if (d == 0) {
    for (double v : h)
      if (v < -1e-9 * (1.0 + std::fabs(v))) return {};
    return {Vector{}};
  }
  const Matrix null_g = solve_affine(g, Vector(g.rows(), 0.0)).nullspace;
  if (null_g.cols() > 0) {
    // A lineality space: the set has no vertices and is unbounded unless
    // empty. Decide emptiness on the row space.
    const Matrix basis = solve_affine(null_g.transpose(), Vector(null_g.cols(), 0.0)).nullspace;
    Matrix reduced(g.rows(), basis.cols());
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t k = 0; k < basis.cols(); ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += g(i, j) * basis(j, k);
        reduced(i, k) = s;
      }
    if (!enumerate_vertices(reduced, h, vertex_tol).empty()) throw EnumerationError("unbounded");
    return {};
  }
  auto verts = vertices_full_rank(g, h, vertex_tol);
  if (!verts.empty() && has_recession_direction(g)) throw EnumerationError("unbounded");
  return verts;
}

LPSolution solve_lp_by_enumeration(const LPProblem& lp, double vertex_tol) {
  lp.validate();
  const std::size_t n = lp.num_vars();
  LPSolution sol;
  Vector p(n, 0.0);
  Matrix basis = Matrix::identity(n);
  if (lp.num_eq() > 0) {
    auto aff = solve_affine(lp.eq, lp.eq_rhs);
    if (!aff.consistent) {
      sol.status = LPStatus::Infeasible;
      return sol;
    }
    p = std::move(aff.particular);
    basis = std::move(aff.nullspace);
  }
  const std::size_t d = basis.cols();
  Matrix g(lp.num_ineq(), d);
  Vector h = lp.ineq_rhs;
  for (std::size_t i = 0; i < lp.num_ineq(); ++i) {
    for (std::size_t j = 0; j < n; ++j) h[i] -= lp.ineq(i, j) * p[j];
    for (std::size_t k = 0; k < d; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += lp.ineq(i, j) * basis(j, k);
      g(i, k) = s;
    }
  }
  const auto verts = enumerate_vertices(g, h, vertex_tol);
  if (verts.empty()) {
    sol.status = LPStatus::Infeasible;
    return sol;
  }
  const double sense = lp.sense == Sense::Minimize ? 1.0 : -1.0;
  bool first = true;
  for (const Vector& y : verts) {
    Vector x = p;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < d; ++k) x[j] += basis(j, k) * y[k];
    const double v = dot(lp.cost, x);
    if (first || sense * v < sense * sol.value) {
      sol.value = v;
      sol.x = std::move(x);
      first = false;
    }
  }
  sol.status = LPStatus::Optimal;
  return sol;
}

}  // namespace dualdfi::numerics
