#pragma once

#include <string>
#include <vector>

#include "dualdfi/dfi/problem.hpp"

namespace dualdfi::dfi {

/// z = (x, v_1, ..., v_{k-1}), one vector of length n per entry.
using Stack = std::vector<Vector>;

/// H_F(z, v*) = sup { <v, v*> : v in F(z) }; -inf when F(z) is empty,
/// +inf when unbounded.
double hamiltonian(const Inclusion& f, const Stack& z, const Vector& vstar);

/// How far v is from F(z). Semilinear: sup-norm distance to A z + B U.
/// Polyhedral: largest row violation.
double inclusion_distance(const Inclusion& f, const Stack& z, const Vector& v);

/// v in F(z) within feas_tol and <v, v*> >= H_F(z, v*) - tol. Throws
/// std::domain_error("argmax undefined") when H_F is infinite.
bool argmax_contains(const Inclusion& f, const Stack& z, const Vector& v, const Vector& vstar,
                     double tol, double feas_tol = 1e-8);

/// Membership of candidate = (x*, v_1*, ..., v_{k-1}*) in F*(v*; (z, v)).
/// Throws std::invalid_argument when v is not in F(z) within feas_tol.
bool lam_contains(const Inclusion& f, const Vector& vstar, const Stack& z, const Vector& v,
                  const Stack& candidate, double tol, double feas_tol = 1e-8);

struct MValue {
  double value = 0.0;  // -inf off the effective domain
  Vector lambda;       // polyhedral only: multipliers of the graph rows
};

/// M_F(x*, v_1*, ..., v_{k-1}*, v*) = inf over gph F of
/// <x, x*> + sum <v_j, v_j*> - <v, v*>. wstar has kappa + 1 entries.
MValue m_value(const Inclusion& f, const Stack& wstar);

/// sign * A_{matrix}^T x*^{(derivative)}
struct AdjointTerm {
  std::size_t derivative = 0;
  int sign = 1;
  std::size_t matrix = 0;

  friend bool operator==(const AdjointTerm&, const AdjointTerm&) = default;
};

/// lhs_sign * x*^{(kappa)} = sum(ode); eta[j-1] is the expression for eta_j*.
struct AdjointSystem {
  std::size_t kappa = 1;
  int lhs_sign = -1;
  std::vector<AdjointTerm> ode;
  std::vector<std::vector<AdjointTerm>> eta;
  std::vector<Matrix> AT;  // A_j^T

  std::string text() const;

  /// derivs[i] = x*^{(i)} at one node, i = 0..kappa-1 (more entries ignored).
  Vector eta_value(std::size_t j, const std::vector<Vector>& derivs) const;
  /// lhs_sign * derivs[kappa] - sum(ode); derivs needs kappa + 1 entries.
  Vector ode_residual(const std::vector<Vector>& derivs) const;
};

AdjointSystem adjoint_system(const SemilinearMap& f);

}  // namespace dualdfi::dfi
