#pragma once

#include <cstddef>
#include <string_view>

#include "dualdfi/numerics/dense.hpp"
#include "dualdfi/numerics/kernels.hpp"

namespace dualdfi::numerics {

enum class Sense { Minimize, Maximize };
enum class LPStatus { Optimal, Infeasible, Unbounded };

std::string_view to_string(LPStatus s);

/// All variables are free; sign restrictions are expressed as rows.
///
///   optimize  cost . x
///   s.t.      ineq * x <= ineq_rhs
///             eq   * x  = eq_rhs
///
/// Multiplier convention. For Minimize the Lagrangian is
///   cost.x + y.(ineq x - ineq_rhs) + mu.(eq x - eq_rhs),   y >= 0,
/// so at an optimum cost.x = -(ineq_rhs.y + eq_rhs.mu). For Maximize the
/// Lagrangian is cost.x - y.(ineq x - ineq_rhs) - mu.(eq x - eq_rhs), so
/// cost.x = ineq_rhs.y + eq_rhs.mu. In both cases y >= 0.
struct LPProblem {
  Sense sense = Sense::Minimize;
  Vector cost;
  Matrix ineq;
  Vector ineq_rhs;
  Matrix eq;
  Vector eq_rhs;

  std::size_t num_vars() const { return cost.size(); }
  std::size_t num_ineq() const { return ineq_rhs.size(); }
  std::size_t num_eq() const { return eq_rhs.size(); }

  /// Throws std::invalid_argument on inconsistent shapes or non-finite data.
  void validate() const;
};

struct LPTolerances {
  double pivot = 1e-9;
  double feas = 1e-8;
  double cs = 1e-7;
  double gap = 1e-7;
  double dual = 1e-9;
};

struct SimplexOptions {
  LPTolerances tol{};
  kernels::Backend backend = kernels::Backend::Auto;
  // Residual check (and refactorization if needed) every this many pivots.
  std::size_t refactor_interval = 50;
  // 0 selects 50 * (rows + columns).
  std::size_t max_iterations = 0;
};

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  Vector x;
  double value = 0.0;
  Vector ineq_multipliers;
  Vector eq_multipliers;
  // Improving direction of the feasible set when Unbounded.
  Vector ray;
  std::size_t iterations = 0;
  // Some basic variable sat at zero in the final basis, so the multipliers
  // may not be unique.
  bool degenerate = false;
};

LPSolution solve_lp(const LPProblem& lp, const SimplexOptions& opts = {});

/// Objective of the Lagrangian dual at the solution's multipliers (see the
/// sign convention on LPProblem).
double multiplier_dual_value(const LPProblem& lp, const LPSolution& sol);

struct LPResiduals {
  double primal_infeasibility = 0.0;   // max violation of ineq/eq rows
  double multiplier_negativity = 0.0;  // max(0, -min y)
  double complementarity = 0.0;        // max |y_i (Gx - h)_i|
  double stationarity = 0.0;           // |cost +/- G^T y +/- E^T mu|_inf
  double gap = 0.0;                    // |cost.x - multiplier_dual_value|
};

LPResiduals residuals(const LPProblem& lp, const LPSolution& sol);

/// Brute-force oracle: eliminates equality rows, enumerates every vertex of
/// the remaining polytope and returns the best one. Multipliers are left
/// empty. Throws EnumerationError when the feasible region is unbounded or
/// the number of candidate bases exceeds the guard.
LPSolution solve_lp_by_enumeration(const LPProblem& lp, double vertex_tol = 1e-9);

}  // namespace dualdfi::numerics
