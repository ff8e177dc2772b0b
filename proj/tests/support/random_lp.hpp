#pragma once

#include <random>

#include "dualdfi/numerics/lp.hpp"

namespace testsupport {

using dualdfi::numerics::LPProblem;
using dualdfi::numerics::Matrix;
using dualdfi::numerics::Vector;

// Bounded random LP: x_j >= -R for every j and sum x <= R keep the region
// bounded; the remaining rows are random. Small integer data is mixed in so
// that degenerate vertices and ties show up regularly.
inline LPProblem random_bounded_lp(std::mt19937_64& rng, std::size_t max_vars = 8,
                                   std::size_t max_rows = 16) {
  std::uniform_int_distribution<std::size_t> nvar(1, max_vars);
  const std::size_t n = nvar(rng);
  const std::size_t base = n + 1;
  std::uniform_int_distribution<std::size_t> nextra(0, max_rows - base);
  const std::size_t extra = nextra(rng);
  std::uniform_int_distribution<std::size_t> neq(0, std::min<std::size_t>(2, n > 1 ? n - 1 : 0));
  const std::size_t eq_rows = std::min(neq(rng), extra);
  const std::size_t ineq_rows = base + extra - eq_rows;

  std::uniform_real_distribution<double> real(-1.0, 1.0);
  std::uniform_int_distribution<int> small(-3, 3);
  std::bernoulli_distribution use_int(0.4);
  std::bernoulli_distribution maximize(0.3);
  const bool integral = use_int(rng);
  auto entry = [&] { return integral ? static_cast<double>(small(rng)) : real(rng); };

  LPProblem lp;
  lp.sense = maximize(rng) ? dualdfi::numerics::Sense::Maximize : dualdfi::numerics::Sense::Minimize;
  lp.cost.resize(n);
  for (double& c : lp.cost) c = entry();
  const double radius = 5.0;
  lp.ineq = Matrix(ineq_rows, n);
  lp.ineq_rhs.assign(ineq_rows, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    lp.ineq(j, j) = -1.0;
    lp.ineq_rhs[j] = radius;
  }
  for (std::size_t j = 0; j < n; ++j) lp.ineq(n, j) = 1.0;
  lp.ineq_rhs[n] = radius;
  for (std::size_t i = base; i < ineq_rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) lp.ineq(i, j) = entry();
    lp.ineq_rhs[i] = integral ? static_cast<double>(small(rng)) : 2.0 * real(rng);
  }
  lp.eq = Matrix(eq_rows, n);
  lp.eq_rhs.assign(eq_rows, 0.0);
  for (std::size_t i = 0; i < eq_rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) lp.eq(i, j) = entry();
    lp.eq_rhs[i] = integral ? static_cast<double>(small(rng)) : real(rng);
  }
  return lp;
}

}  // namespace testsupport
