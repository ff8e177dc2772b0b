// Two-phase revised simplex on a dense basis inverse.
//
// Standard form: every original row gets a sign so that its right-hand side
// is nonnegative; inequality rows get a slack; rows whose slack cannot start
// basic get an artificial. Structural variables are free, slacks are
// nonnegative, artificials are nonnegative in phase 1 and fixed at zero in
// phase 2. Every nonbasic variable sits at zero.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dualdfi/numerics/linalg.hpp"
#include "dualdfi/numerics/lp.hpp"

namespace dualdfi::numerics {

std::string_view to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal: return "Optimal";
    case LPStatus::Infeasible: return "Infeasible";
    case LPStatus::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

void LPProblem::validate() const {
  const std::size_t n = cost.size();
  if (ineq.rows() != ineq_rhs.size())
    throw std::invalid_argument("LPProblem: inequality rows and rhs differ in length");
  if (eq.rows() != eq_rhs.size())
    throw std::invalid_argument("LPProblem: equality rows and rhs differ in length");
  if (ineq.rows() > 0 && ineq.cols() != n)
    throw std::invalid_argument("LPProblem: inequality matrix has wrong column count");
  if (eq.rows() > 0 && eq.cols() != n)
    throw std::invalid_argument("LPProblem: equality matrix has wrong column count");
  if (!all_finite(cost) || !all_finite(ineq_rhs) || !all_finite(eq_rhs) || !ineq.all_finite() ||
      !eq.all_finite())
    throw std::invalid_argument("LPProblem: non-finite entry");
}

namespace {

enum class VarKind { Free, NonNeg, Fixed };

struct Entry {
  std::size_t row;
  double value;
};

class Simplex {
 public:
  Simplex(const LPProblem& lp, const SimplexOptions& opts)
      : lp_(lp), opts_(opts), k_(kernels::select(opts.backend)) {
    build();
  }

  LPSolution run();

 private:
  void build();
  void refactor();
  void recompute_primal();
  void recompute_duals();
  void refine();
  double primal_residual() const;

  std::vector<double> column_times_binv(std::size_t q) const;
  void pivot(std::size_t q, std::size_t r, const std::vector<double>& w, double entering_value,
             double dq);

  // Returns false when the phase hit an unbounded direction.
  bool optimize_phase(std::size_t* unbounded_col, int* unbounded_dir, std::vector<double>* ray_w);
  void set_phase_costs(bool phase_one);
  void drive_out_artificials();

  VarKind kind(std::size_t j) const {
    if (j < n_) return VarKind::Free;
    if (j < first_art_) return VarKind::NonNeg;
    return phase_one_ ? VarKind::NonNeg : VarKind::Fixed;
  }

  const LPProblem& lp_;
  SimplexOptions opts_;
  const kernels::Table& k_;

  std::size_t n_ = 0;          // structural columns
  std::size_t m_ = 0;          // rows
  std::size_t first_art_ = 0;  // first artificial column
  std::size_t ncols_ = 0;
  std::vector<std::vector<Entry>> cols_;
  std::vector<double> sign_;  // row normalization
  Vector b_;
  Vector c_;
  double cost_scale_ = 1.0;

  std::vector<std::size_t> basis_;
  std::vector<long> position_;  // -1 when nonbasic
  Matrix binv_;
  Vector xb_;
  Vector pi_;
  bool phase_one_ = true;
  std::size_t iterations_ = 0;
  std::size_t max_iterations_ = 0;
};

void Simplex::build() {
  lp_.validate();
  n_ = lp_.num_vars();
  const std::size_t mi = lp_.num_ineq();
  const std::size_t me = lp_.num_eq();
  m_ = mi + me;
  sign_.assign(m_, 1.0);
  b_.assign(m_, 0.0);
  for (std::size_t i = 0; i < mi; ++i) {
    sign_[i] = lp_.ineq_rhs[i] < 0.0 ? -1.0 : 1.0;
    b_[i] = sign_[i] * lp_.ineq_rhs[i];
  }
  for (std::size_t i = 0; i < me; ++i) {
    sign_[mi + i] = lp_.eq_rhs[i] < 0.0 ? -1.0 : 1.0;
    b_[mi + i] = sign_[mi + i] * lp_.eq_rhs[i];
  }

  cols_.assign(n_ + mi, {});
  for (std::size_t i = 0; i < mi; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (const double v = lp_.ineq(i, j); v != 0.0) cols_[j].push_back({i, sign_[i] * v});
  for (std::size_t i = 0; i < me; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (const double v = lp_.eq(i, j); v != 0.0) cols_[j].push_back({mi + i, sign_[mi + i] * v});
  for (std::size_t i = 0; i < mi; ++i) cols_[n_ + i].push_back({i, sign_[i]});

  first_art_ = n_ + mi;
  basis_.assign(m_, 0);
  for (std::size_t i = 0; i < m_; ++i) {
    if (i < mi && sign_[i] > 0.0) {
      basis_[i] = n_ + i;
    } else {
      basis_[i] = cols_.size();
      cols_.push_back({{i, 1.0}});
    }
  }
  ncols_ = cols_.size();
  position_.assign(ncols_, -1);
  for (std::size_t i = 0; i < m_; ++i) position_[basis_[i]] = static_cast<long>(i);

  // Initial basis matrix is the identity.
  binv_ = Matrix::identity(m_);
  xb_ = b_;
  pi_.assign(m_, 0.0);
  max_iterations_ = opts_.max_iterations ? opts_.max_iterations : 50 * (m_ + ncols_) + 100;
}

std::vector<double> Simplex::column_times_binv(std::size_t q) const {
  std::vector<double> w(m_, 0.0);
  for (const Entry& e : cols_[q])
    for (std::size_t r = 0; r < m_; ++r) w[r] += binv_(r, e.row) * e.value;
  return w;
}

void Simplex::refactor() {
  Matrix basis(m_, m_);
  for (std::size_t i = 0; i < m_; ++i)
    for (const Entry& e : cols_[basis_[i]]) basis(e.row, i) = e.value;
  auto inv = invert(std::move(basis), 1e-14, k_);
  if (!inv) throw std::runtime_error("simplex: basis matrix became singular");
  binv_ = std::move(*inv);
}

void Simplex::recompute_primal() {
  for (std::size_t r = 0; r < m_; ++r) xb_[r] = k_.dot(binv_.row(r).data(), b_.data(), m_);
}

void Simplex::recompute_duals() {
  std::fill(pi_.begin(), pi_.end(), 0.0);
  for (std::size_t i = 0; i < m_; ++i) {
    const double cb = c_[basis_[i]];
    if (cb != 0.0) k_.axpy(cb, binv_.row(i).data(), pi_.data(), m_);
  }
}

double Simplex::primal_residual() const {
  Vector r = b_;
  for (std::size_t i = 0; i < m_; ++i)
    for (const Entry& e : cols_[basis_[i]]) r[e.row] -= e.value * xb_[i];
  return k_.max_abs(r.data(), m_);
}

// One step of iterative refinement for both the basic solution and the
// simplex multipliers.
void Simplex::refine() {
  Vector r = b_;
  for (std::size_t i = 0; i < m_; ++i)
    for (const Entry& e : cols_[basis_[i]]) r[e.row] -= e.value * xb_[i];
  for (std::size_t i = 0; i < m_; ++i) xb_[i] += k_.dot(binv_.row(i).data(), r.data(), m_);

  Vector rho(m_, 0.0);
  for (std::size_t i = 0; i < m_; ++i) {
    double s = c_[basis_[i]];
    for (const Entry& e : cols_[basis_[i]]) s -= pi_[e.row] * e.value;
    rho[i] = s;
  }
  for (std::size_t i = 0; i < m_; ++i)
    if (rho[i] != 0.0) k_.axpy(rho[i], binv_.row(i).data(), pi_.data(), m_);
}

void Simplex::pivot(std::size_t q, std::size_t r, const std::vector<double>& w,
                    double entering_value, double dq) {
  for (std::size_t i = 0; i < m_; ++i)
    if (i != r && w[i] != 0.0) xb_[i] -= entering_value * w[i];
  xb_[r] = entering_value;

  const double wr = w[r];
  double* pivot_row = binv_.row(r).data();
  k_.scale(1.0 / wr, pivot_row, m_);
  for (std::size_t i = 0; i < m_; ++i)
    if (i != r && w[i] != 0.0) k_.axpy(-w[i], pivot_row, binv_.row(i).data(), m_);
  if (dq != 0.0) k_.axpy(dq, pivot_row, pi_.data(), m_);

  position_[basis_[r]] = -1;
  basis_[r] = q;
  position_[q] = static_cast<long>(r);
  ++iterations_;
  if (iterations_ > max_iterations_) throw std::runtime_error("simplex: iteration limit reached");
  if (iterations_ % opts_.refactor_interval == 0) {
    const double scale = 1.0 + k_.max_abs(b_.data(), m_);
    if (primal_residual() > 1e-9 * scale) {
      refactor();
      recompute_primal();
    }
    recompute_duals();
  }
}

void Simplex::set_phase_costs(bool phase_one) {
  phase_one_ = phase_one;
  c_.assign(ncols_, 0.0);
  if (phase_one) {
    for (std::size_t j = first_art_; j < ncols_; ++j) c_[j] = 1.0;
  } else {
    const double s = lp_.sense == Sense::Minimize ? 1.0 : -1.0;
    for (std::size_t j = 0; j < n_; ++j) c_[j] = s * lp_.cost[j];
  }
  cost_scale_ = std::max(1.0, norm_inf(c_));
  recompute_duals();
}

bool Simplex::optimize_phase(std::size_t* unbounded_col, int* unbounded_dir,
                             std::vector<double>* ray_w) {
  const double dtol = opts_.tol.dual * cost_scale_;
  const double ptol = opts_.tol.pivot;
  const double ftol = opts_.tol.feas;
  std::size_t degenerate_pivots = 0;
  bool bland = false;
  bool retried = false;
  const std::size_t bland_after = 3 * (m_ + ncols_);

  for (;;) {
    // Pricing.
    std::size_t q = ncols_;
    int dir = 0;
    double best = 0.0;
    double dq = 0.0;
    for (std::size_t j = 0; j < ncols_; ++j) {
      if (position_[j] >= 0) continue;
      const VarKind kj = kind(j);
      if (kj == VarKind::Fixed) continue;
      double d = c_[j];
      for (const Entry& e : cols_[j]) d -= pi_[e.row] * e.value;
      int jdir = 0;
      if (d < -dtol) jdir = 1;
      else if (kj == VarKind::Free && d > dtol) jdir = -1;
      if (jdir == 0) continue;
      if (bland) {
        q = j;
        dir = jdir;
        dq = d;
        break;
      }
      if (std::fabs(d) > best) {
        best = std::fabs(d);
        q = j;
        dir = jdir;
        dq = d;
      }
    }
    if (q == ncols_) return true;

    std::vector<double> w = column_times_binv(q);

    // Ratio test. Harris two-pass under Dantzig pricing, textbook
    // minimum ratio with lowest-index ties under Bland.
    auto limit_of = [&](std::size_t r, double* ratio, double* relaxed) -> bool {
      const VarKind kr = kind(basis_[r]);
      const double a = dir * w[r];
      if (kr == VarKind::Free) return false;
      if (kr == VarKind::Fixed) {
        if (std::fabs(a) <= ptol) return false;
        *ratio = 0.0;
        *relaxed = ftol / std::fabs(a);
        return true;
      }
      if (a <= ptol) return false;
      *ratio = std::max(0.0, xb_[r]) / a;
      *relaxed = (xb_[r] + ftol) / a;
      return true;
    };

    std::size_t leave = m_;
    if (bland) {
      double best_ratio = kInf;
      for (std::size_t r = 0; r < m_; ++r) {
        double ratio, relaxed;
        if (!limit_of(r, &ratio, &relaxed)) continue;
        if (ratio < best_ratio - 1e-12 * (1.0 + best_ratio) ||
            (ratio <= best_ratio + 1e-12 * (1.0 + best_ratio) && leave < m_ &&
             basis_[r] < basis_[leave])) {
          if (ratio < best_ratio) best_ratio = ratio;
          leave = r;
        }
      }
    } else {
      double theta_max = kInf;
      for (std::size_t r = 0; r < m_; ++r) {
        double ratio, relaxed;
        if (limit_of(r, &ratio, &relaxed)) theta_max = std::min(theta_max, relaxed);
      }
      double best_pivot = 0.0;
      for (std::size_t r = 0; r < m_; ++r) {
        double ratio, relaxed;
        if (!limit_of(r, &ratio, &relaxed) || ratio > theta_max) continue;
        const double pv = std::fabs(w[r]);
        if (pv > best_pivot || (pv == best_pivot && leave < m_ && basis_[r] < basis_[leave])) {
          best_pivot = pv;
          leave = r;
        }
      }
    }

    if (leave == m_) {
      if (!retried) {
        // Rule out accumulated error before declaring a ray.
        refactor();
        recompute_primal();
        recompute_duals();
        retried = true;
        continue;
      }
      *unbounded_col = q;
      *unbounded_dir = dir;
      *ray_w = std::move(w);
      return false;
    }
    retried = false;

    double ratio = 0.0, relaxed = 0.0;
    limit_of(leave, &ratio, &relaxed);
    const double theta = ratio;
    if (theta <= 1e-12) {
      if (++degenerate_pivots > bland_after) bland = true;
    }
    pivot(q, leave, w, dir * theta, dq);
  }
}

void Simplex::drive_out_artificials() {
  for (std::size_t r = 0; r < m_; ++r) {
    if (basis_[r] < first_art_) continue;
    std::size_t best_j = ncols_;
    double best_abs = 1e-7;
    const double* row = binv_.row(r).data();
    for (std::size_t j = 0; j < first_art_; ++j) {
      if (position_[j] >= 0) continue;
      double alpha = 0.0;
      for (const Entry& e : cols_[j]) alpha += row[e.row] * e.value;
      if (std::fabs(alpha) > best_abs) {
        best_abs = std::fabs(alpha);
        best_j = j;
      }
    }
    if (best_j == ncols_) continue;  // redundant row; artificial stays basic at zero
    std::vector<double> w = column_times_binv(best_j);
    const double entering = xb_[r] / w[r];
    pivot(best_j, r, w, entering, 0.0);
  }
}

LPSolution Simplex::run() {
  LPSolution sol;
  const double b_scale = std::max(1.0, norm_inf(b_));
  std::size_t ucol = 0;
  int udir = 0;
  std::vector<double> uw;

  if (first_art_ < ncols_) {
    set_phase_costs(true);
    optimize_phase(&ucol, &udir, &uw);
    refactor();
    recompute_primal();
    double infeasibility = 0.0;
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] >= first_art_) infeasibility += std::max(0.0, xb_[r]);
    if (infeasibility > opts_.tol.feas * b_scale) {
      sol.status = LPStatus::Infeasible;
      sol.iterations = iterations_;
      return sol;
    }
    drive_out_artificials();
  }

  set_phase_costs(false);
  const bool optimal = optimize_phase(&ucol, &udir, &uw);
  sol.iterations = iterations_;

  if (!optimal) {
    sol.status = LPStatus::Unbounded;
    sol.ray.assign(n_, 0.0);
    if (ucol < n_) sol.ray[ucol] = udir;
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < n_) sol.ray[basis_[r]] = -udir * uw[r];
    return sol;
  }

  refactor();
  recompute_primal();
  recompute_duals();
  refine();

  sol.status = LPStatus::Optimal;
  sol.x.assign(n_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) {
    if (basis_[r] < n_) sol.x[basis_[r]] = xb_[r];
    if (basis_[r] >= n_ && std::fabs(xb_[r]) <= opts_.tol.feas) sol.degenerate = true;
  }
  sol.value = dot(lp_.cost, sol.x);
  const std::size_t mi = lp_.num_ineq();
  sol.ineq_multipliers.assign(mi, 0.0);
  sol.eq_multipliers.assign(lp_.num_eq(), 0.0);
  for (std::size_t i = 0; i < mi; ++i) sol.ineq_multipliers[i] = -sign_[i] * pi_[i];
  for (std::size_t i = 0; i < lp_.num_eq(); ++i)
    sol.eq_multipliers[i] = -sign_[mi + i] * pi_[mi + i];
  return sol;
}

}  // namespace

LPSolution solve_lp(const LPProblem& lp, const SimplexOptions& opts) {
  Simplex s(lp, opts);
  return s.run();
}

double multiplier_dual_value(const LPProblem& lp, const LPSolution& sol) {
  const double v = dot(lp.ineq_rhs, sol.ineq_multipliers) + dot(lp.eq_rhs, sol.eq_multipliers);
  return lp.sense == Sense::Minimize ? -v : v;
}

LPResiduals residuals(const LPProblem& lp, const LPSolution& sol) {
  LPResiduals r;
  if (sol.status != LPStatus::Optimal) return r;
  const Vector gx = lp.num_ineq() ? lp.ineq.multiply(sol.x) : Vector{};
  const Vector ex = lp.num_eq() ? lp.eq.multiply(sol.x) : Vector{};
  for (std::size_t i = 0; i < lp.num_ineq(); ++i) {
    const double slack = gx[i] - lp.ineq_rhs[i];
    r.primal_infeasibility = std::max(r.primal_infeasibility, slack);
    r.multiplier_negativity = std::max(r.multiplier_negativity, -sol.ineq_multipliers[i]);
    r.complementarity = std::max(r.complementarity, std::fabs(sol.ineq_multipliers[i] * slack));
  }
  for (std::size_t i = 0; i < lp.num_eq(); ++i)
    r.primal_infeasibility = std::max(r.primal_infeasibility, std::fabs(ex[i] - lp.eq_rhs[i]));
  // Minimize: cost + G^T y + E^T mu = 0. Maximize: cost - G^T y - E^T mu = 0.
  Vector g = lp.cost;
  const double s = lp.sense == Sense::Minimize ? 1.0 : -1.0;
  if (lp.num_ineq()) {
    const Vector gy = lp.ineq.transpose_multiply(sol.ineq_multipliers);
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += s * gy[j];
  }
  if (lp.num_eq()) {
    const Vector em = lp.eq.transpose_multiply(sol.eq_multipliers);
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += s * em[j];
  }
  r.stationarity = norm_inf(g);
  r.gap = std::fabs(sol.value - multiplier_dual_value(lp, sol));
  return r;
}

}  // namespace dualdfi::numerics
