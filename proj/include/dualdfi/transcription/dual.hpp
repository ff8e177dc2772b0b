#pragma once

#include <utility>

#include "dualdfi/numerics/lp.hpp"
#include "dualdfi/transcription/primal.hpp"

namespace dualdfi::transcription {

/// Sparse linear function of the packed dual vector.
struct LinearForm {
  std::vector<std::pair<std::size_t, double>> terms;

  void add(std::size_t index, double coef);
  void add(const LinearForm& other, double scale);
  double eval(const Vector& x) const;
};

/// Packed dual vector: xstar[k] for k = 0..N, then eta[j-1][k].
struct DualLayout {
  std::size_t N = 0, n = 0, kappa = 0;

  std::size_t xstar(std::size_t k, std::size_t i) const { return k * n + i; }
  std::size_t eta(std::size_t j, std::size_t k, std::size_t i) const {
    return (N + 1) * n + ((j - 1) * (N + 1) + k) * n + i;
  }
  std::size_t size() const { return kappa * (N + 1) * n; }
};

/// Arguments of the dual objective as linear forms in the packed dual
/// vector, using backward_stencil for every derivative of x*:
///   p_{kappa-1-j,k} = (-1)^j D^j xstar_k - eta_{j,k}   (eta_0 = 0)
///   g1             = -p_N                      (argument of phi*)
///   g2[k]          = (X_0, ..., X_{kappa-1}, v*) with
///                    X_{i,k} = (p_{i,k} - p_{i,k+1}) / h - p_{i-1,k+1},
///                    v* = p_{kappa-1,k+1}      (argument of M_F)
///   g3[i]          = p_{i,0}                   (argument of W_{Q_i})
struct DualArguments {
  DualLayout layout;
  std::vector<std::vector<LinearForm>> p;   // p[k][i * n + c]
  std::vector<LinearForm> g1;               // kappa * n
  std::vector<std::vector<LinearForm>> g2;  // per interval, (kappa + 1) * n
  std::vector<std::vector<LinearForm>> g3;  // per initial set, n
};

DualArguments build_dual_arguments(const dfi::MayerProblem& p, const Grid& g);

Vector pack_dual(const DualLayout& layout, const DualTrajectory& d);

struct DualTranscription {
  numerics::LPProblem lp;
  DualArguments args;
  std::size_t phi_begin = 0;                 // phi* multipliers
  std::vector<std::size_t> q_begin;          // W_Q multipliers per initial set
  std::size_t interval_begin = 0;            // per-interval auxiliaries
  std::size_t interval_size = 0;
};

/// Maximize -phi*(g1) + h sum_k M_F(g2[k]) - sum_i W_{Q_i}(g3[i]) as a single
/// LP. phi*, M_F and W_Q enter through their LP-dual representations.
DualTranscription transcribe_dual_direct(const dfi::MayerProblem& p, const Grid& g);

struct DualSolution {
  DualTrajectory trajectory;
  double value = 0.0;
  numerics::LPSolution lp;
};

/// Throws SolveError unless the dual LP is Optimal.
DualSolution solve_dual(const dfi::MayerProblem& p, const Grid& g,
                        const numerics::SimplexOptions& opts = {});

/// Node-indexed adjoint sequence p[k][i] (i = 0..kappa-1) to (x*, eta).
DualTrajectory dual_from_adjoint(const dfi::MayerProblem& p, const Grid& g,
                                 const std::vector<std::vector<Vector>>& adj);

/// Dual trajectory from the multipliers of an optimal primal transcription.
DualTrajectory extract_dual_trajectory(const numerics::LPSolution& sol, const dfi::MayerProblem& p,
                                       const Grid& g);

/// Semilinear: eta from the elimination formulas, derivatives by
/// finite_difference.
DualTrajectory semilinear_dual_from_xstar(const dfi::MayerProblem& p, const Grid& g,
                                          const std::vector<Vector>& xstar);

/// Polyhedral: node samples lambda(t_k), k = 0..N. Sets xstar_k = -C^T
/// lambda(t_k), eta_k = -B^T lambda(t_k); interval k carries lambda(t_{k+1}).
DualTrajectory polyhedral_dual_from_lambda(const dfi::MayerProblem& p, const Grid& g,
                                           const std::vector<Vector>& lambda_nodes);

struct DualArgumentValues {
  Vector g1;
  std::vector<Vector> g2;
  std::vector<Vector> g3;
  std::vector<std::vector<Vector>> p;  // p[k][i]
};

DualArgumentValues dual_argument_values(const dfi::MayerProblem& p, const DualTrajectory& d);

struct DualObjective {
  double value = 0.0;         // -inf when any term is infinite
  double conjugate_term = 0;  // -phi*(g1)
  std::vector<double> m_terms;        // h * M_F(g2[k])
  std::vector<double> support_terms;  // -W_{Q_i}(g3[i])
};

DualObjective evaluate_dual_objective_terms(const dfi::MayerProblem& p, const DualTrajectory& d);
double evaluate_dual_objective(const dfi::MayerProblem& p, const DualTrajectory& d);

/// Discrete summation by parts:
///   h sum_k (sum_i <X_{i,k}, z_{k,i}> - <v*_k, v_k>) - sum_i <p_{i,0}, z_{0,i}>
///   + sum_i <p_{i,N}, z_{N,i}>
/// vanishes for every trajectory that satisfies the Euler chain.
double omega_identity(const dfi::MayerProblem& p, const PrimalTrajectory& x,
                      const DualTrajectory& d);

}  // namespace dualdfi::transcription
