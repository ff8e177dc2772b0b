#pragma once

#include <stdexcept>

#include "dualdfi/numerics/lp.hpp"
#include "dualdfi/transcription/trajectory.hpp"

namespace dualdfi::transcription {

/// Raised by the solve_* functions when the LP is not Optimal.
class SolveError : public std::runtime_error {
 public:
  SolveError(numerics::LPStatus status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  numerics::LPStatus status() const { return status_; }

 private:
  numerics::LPStatus status_;
};

/// Column and row positions in the primal transcription.
///
/// Columns: z[k][j] for k = 0..N (k-major), then v[k], then u[k]
/// (semilinear), then the epigraph scalar tau.
/// Equality rows: Euler chain (k, j) for k < N, then the semilinear dynamics
/// per interval. Inequality rows: Q_0..Q_{kappa-1} at node 0, then per
/// interval U (semilinear) or the graph rows (polyhedral), then one row per
/// phi piece.
struct PrimalLayout {
  std::size_t N = 0, n = 0, kappa = 0, r = 0, pieces = 0;
  bool semilinear = true;
  std::vector<std::size_t> q_rows;  // rows per initial set
  std::size_t interval_rows = 0;    // U or graph rows per interval

  std::size_t z(std::size_t k, std::size_t j, std::size_t i) const { return (k * kappa + j) * n + i; }
  std::size_t v(std::size_t k, std::size_t i) const { return (N + 1) * kappa * n + k * n + i; }
  std::size_t u(std::size_t k, std::size_t i) const { return (N + 1) * kappa * n + N * n + k * r + i; }
  std::size_t tau() const { return (N + 1) * kappa * n + N * n + (semilinear ? N * r : 0); }
  std::size_t num_vars() const { return tau() + 1; }

  std::size_t chain_row(std::size_t k, std::size_t j, std::size_t i) const { return (k * kappa + j) * n + i; }
  std::size_t dynamics_row(std::size_t k, std::size_t i) const { return N * kappa * n + k * n + i; }
  std::size_t num_eq() const { return N * kappa * n + (semilinear ? N * n : 0); }

  std::size_t q_row(std::size_t j, std::size_t row) const;
  std::size_t interval_row(std::size_t k, std::size_t row) const;
  std::size_t phi_row(std::size_t piece) const;
  std::size_t num_ineq() const { return phi_row(0) + pieces; }
};

PrimalLayout primal_layout(const dfi::MayerProblem& p, const Grid& g);

struct PrimalTranscription {
  numerics::LPProblem lp;
  PrimalLayout layout;
};

PrimalTranscription transcribe_primal(const dfi::MayerProblem& p, const Grid& g);

struct PrimalSolution {
  PrimalTrajectory trajectory;
  double value = 0.0;
  numerics::LPSolution lp;
  PrimalLayout layout;
};

/// Throws SolveError when the transcription is Infeasible or Unbounded.
PrimalSolution solve_primal(const dfi::MayerProblem& p, const Grid& g,
                            const numerics::SimplexOptions& opts = {});

PrimalTrajectory unpack_primal(const PrimalLayout& layout, const Grid& g, const Vector& x);

/// phi(z_N).
double evaluate_primal_objective(const dfi::MayerProblem& p, const PrimalTrajectory& x);

}  // namespace dualdfi::transcription
