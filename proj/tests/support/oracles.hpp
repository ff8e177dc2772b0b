#pragma once

// Independent reference computations used by the unit and acceptance tests.
// They avoid the simplex solver where they can (vertex enumeration instead).

#include <cmath>
#include <random>

#include "dualdfi/convex/piecewise.hpp"
#include "dualdfi/convex/polytope.hpp"
#include "dualdfi/numerics/enumeration.hpp"
#include "dualdfi/numerics/lp.hpp"

namespace oracles {

using dualdfi::convex::PiecewiseMaxAffine;
using dualdfi::convex::Polytope;
using dualdfi::numerics::LPProblem;
using dualdfi::numerics::Matrix;
using dualdfi::numerics::Vector;

inline double support_by_vertices(const Polytope& q, const Vector& p) {
  double best = -dualdfi::numerics::kInf;
  for (const Vector& v : q.vertices()) best = std::fmax(best, dualdfi::numerics::dot(v, p));
  return best;
}

// sup_z <z, z*> - phi(z) over a box of radius r, as an epigraph LP solved by
// enumeration.
inline double boxed_conjugate(const PiecewiseMaxAffine& phi, const Vector& zs, double r) {
  const std::size_t d = phi.dim();
  const std::size_t k = phi.pieces().size();
  LPProblem lp;
  lp.sense = dualdfi::numerics::Sense::Maximize;
  lp.cost = zs;
  lp.cost.push_back(-1.0);
  lp.ineq = Matrix(k + 2 * d + 1, d + 1);
  lp.ineq_rhs.assign(k + 2 * d + 1, r);
  // The epigraph variable only needs an upper cap to make the region bounded.
  lp.ineq(k + 2 * d, d) = 1.0;
  lp.ineq_rhs[k + 2 * d] = 1e6;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < d; ++j) lp.ineq(i, j) = phi.pieces()[i].c[j];
    lp.ineq(i, d) = -1.0;
    lp.ineq_rhs[i] = -phi.pieces()[i].b;
  }
  for (std::size_t j = 0; j < d; ++j) {
    lp.ineq(k + 2 * j, j) = 1.0;
    lp.ineq(k + 2 * j + 1, j) = -1.0;
  }
  return dualdfi::numerics::solve_lp_by_enumeration(lp).value;
}

// +inf when the boxed value keeps growing with the box.
inline double conjugate_by_enumeration(const PiecewiseMaxAffine& phi, const Vector& zs) {
  const double a = boxed_conjugate(phi, zs, 100.0);
  const double b = boxed_conjugate(phi, zs, 200.0);
  if (b > a + 1e-6 * (1.0 + std::fabs(a))) return dualdfi::numerics::kInf;
  return a;
}

inline Polytope random_bounded_polytope(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> ncuts(0, 3);
  Vector x0(dim);
  for (double& v : x0) v = u(rng);
  const int cuts = ncuts(rng);
  Matrix g(2 * dim + cuts, dim);
  Vector h(2 * dim + cuts);
  for (std::size_t j = 0; j < dim; ++j) {
    g(2 * j, j) = 1.0;
    h[2 * j] = 1.0 + u(rng) * 0.5 + 1.0;
    g(2 * j + 1, j) = -1.0;
    h[2 * j + 1] = 1.0 + u(rng) * 0.5 + 1.0;
  }
  for (int c = 0; c < cuts; ++c) {
    const std::size_t i = 2 * dim + c;
    double s = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      g(i, j) = u(rng);
      s += g(i, j) * x0[j];
    }
    h[i] = s + 0.1 + 0.5 * (u(rng) + 1.0);
  }
  return Polytope(std::move(g), std::move(h));
}

inline PiecewiseMaxAffine random_piecewise(std::mt19937_64& rng, std::size_t dim, std::size_t k) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<PiecewiseMaxAffine::Piece> pieces(k);
  for (auto& p : pieces) {
    p.c.resize(dim);
    for (double& v : p.c) v = 2.0 * u(rng);
    p.b = u(rng);
  }
  return PiecewiseMaxAffine(std::move(pieces));
}

}  // namespace oracles
