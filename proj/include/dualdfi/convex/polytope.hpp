#pragma once

#include <optional>

#include "dualdfi/numerics/dense.hpp"
#include "dualdfi/numerics/lp.hpp"

namespace dualdfi::convex {

using numerics::Matrix;
using numerics::Vector;

/// {x : G x <= h}. Construction rejects empty sets.
class Polytope {
 public:
  Polytope() = default;
  Polytope(Matrix g, Vector h);
  /// Zero-row polytope of the given dimension, i.e. the whole space.
  explicit Polytope(std::size_t dim);

  static Polytope box(const Vector& lo, const Vector& hi);
  static Polytope point(const Vector& x);

  std::size_t dim() const { return dim_; }
  std::size_t rows() const { return h_.size(); }
  const Matrix& g() const { return g_; }
  const Vector& h() const { return h_; }
  bool bounded() const { return bounded_; }

  /// max_i (G x - h)_i clipped at zero.
  double violation(const Vector& x) const;
  bool contains(const Vector& x, double tol = 1e-8) const { return violation(x) <= tol; }

  /// Vertex set by brute force (see numerics::enumerate_vertices).
  std::vector<Vector> vertices() const;

  friend bool operator==(const Polytope&, const Polytope&) = default;

 private:
  std::size_t dim_ = 0;
  Matrix g_;
  Vector h_;
  bool bounded_ = false;
};

struct SupportValue {
  double value = 0.0;            // +inf when the LP is unbounded
  std::optional<Vector> argmax;  // empty iff value is +inf
};

/// W_Q(p) = sup { <x, p> : x in Q }.
SupportValue support_function(const Polytope& q, const Vector& p);

/// max(0, <p, x> - min_Q <p, .>); +inf when the minimum is unbounded.
/// Throws std::invalid_argument when x is not in Q within feas_tol.
double dual_cone_violation(const Polytope& q, const Vector& x, const Vector& p,
                           double feas_tol = 1e-8);

/// <p, y - x> >= -tol for every y in Q.
bool dual_cone_contains(const Polytope& q, const Vector& x, const Vector& p, double tol);

}  // namespace dualdfi::convex
