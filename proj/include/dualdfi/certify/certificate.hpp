#pragma once

#include <string>
#include <vector>

#include "dualdfi/transcription/dual.hpp"

namespace dualdfi::certify {

using transcription::DualTrajectory;
using transcription::Grid;
using transcription::PrimalTrajectory;

struct CertificateEntry {
  std::string name;
  double residual = 0.0;  // >= 0, +inf when the condition cannot hold
  double tolerance = 0.0;
  bool pass = false;
  std::string details;
};

struct CertificateReport {
  std::vector<CertificateEntry> entries;
  bool pass = false;  // every entry passes
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;  // primal_value - dual_value
  bool degenerate = false;

  const CertificateEntry* find(const std::string& name) const;
};

/// max(1e-6, 5 h).
double default_tolerance(const Grid& g);

/// Semilinear: sup over interior nodes of the adjoint ODE residual with
/// central differences. Polyhedral: sup over interior samples of
/// |C^T l'' + B^T l' - A^T l| with interval k sampled at t_{k+1}.
double adjoint_residual(const dfi::MayerProblem& p, const DualTrajectory& d);

CertificateEntry check_euler_lagrange(const dfi::MayerProblem& p, const PrimalTrajectory& x,
                                      const DualTrajectory& d, double tol);

/// Entries "transversality_t0" and "transversality_t1".
std::vector<CertificateEntry> check_transversality(const dfi::MayerProblem& p,
                                                   const PrimalTrajectory& x,
                                                   const DualTrajectory& d, double tol);

CertificateEntry check_maximum_condition(const dfi::MayerProblem& p, const PrimalTrajectory& x,
                                         const DualTrajectory& d, double tol);

struct WeakDuality {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
  bool pass = false;  // gap >= -1e-6 (1 + scale)
};

WeakDuality check_weak_duality(const dfi::MayerProblem& p, const PrimalTrajectory& x,
                               const DualTrajectory& d);

/// |primal optimum - dual optimum| on the grid. Propagates SolveError.
double duality_gap(const dfi::MayerProblem& p, const Grid& g,
                   const numerics::SimplexOptions& opts = {});

/// Every check plus weak duality; `gap_tol` bounds the gap from above
/// (a negative value skips that bound).
CertificateReport certify(const dfi::MayerProblem& p, const PrimalTrajectory& x,
                          const DualTrajectory& d, double tol, double gap_tol = -1.0);

}  // namespace dualdfi::certify
