#pragma once

#include "dualdfi/dfi/problem.hpp"
#include "dualdfi/transcription/grid.hpp"

namespace dualdfi::transcription {

struct PrimalTrajectory {
  Grid grid;
  std::vector<std::vector<Vector>> z;  // z[k][j] = x^{(j)} at t_k, k = 0..N
  std::vector<Vector> v;               // v[k] = x^{(kappa)} on interval k
  std::vector<Vector> u;               // semilinear controls, per interval

  /// (z[k][0], ..., z[k][kappa-1]) concatenated.
  Vector stacked(std::size_t k) const;
};

struct DualTrajectory {
  Grid grid;
  std::vector<Vector> xstar;             // xstar[k], k = 0..N
  std::vector<std::vector<Vector>> eta;  // eta[j-1][k], j = 1..kappa-1
  std::vector<Vector> lambda;            // polyhedral, per interval
  // The multipliers came from a degenerate LP basis and may not be unique.
  bool degenerate = false;
};

/// Largest violation of the Euler chain, the inclusion and the initial sets.
double primal_violation(const dfi::MayerProblem& p, const PrimalTrajectory& x);

/// Throws std::invalid_argument when sizes do not match the problem and grid.
void check_shape(const dfi::MayerProblem& p, const PrimalTrajectory& x);
void check_shape(const dfi::MayerProblem& p, const DualTrajectory& d);

}  // namespace dualdfi::transcription
