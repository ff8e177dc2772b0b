#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "dualdfi/convex/piecewise.hpp"
#include "dualdfi/convex/polytope.hpp"

namespace dualdfi::dfi {

using convex::PiecewiseMaxAffine;
using convex::Polytope;
using numerics::Matrix;
using numerics::Vector;

/// F(x, v_1, ..., v_{k-1}) = A_0 x + sum_j A_j v_j + B U.
struct SemilinearMap {
  std::size_t kappa = 1;
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<Matrix> A;  // kappa matrices, n x n
  Matrix B;               // n x r
  Polytope U;             // bounded, in R^r

  void validate() const;
  friend bool operator==(const SemilinearMap&, const SemilinearMap&) = default;
};

/// Second-order map F(x, v_1) = {v : A x + B v_1 - C v <= d}.
struct PolyhedralMap2 {
  Matrix A, B, C;  // s x n
  Vector d;        // s
  // F must be nonempty here; zeros when absent.
  std::optional<Vector> ref_x;
  std::optional<Vector> ref_v1;

  std::size_t s() const { return d.size(); }
  std::size_t n() const { return C.cols(); }
  void validate() const;
  friend bool operator==(const PolyhedralMap2&, const PolyhedralMap2&) = default;
};

using Inclusion = std::variant<SemilinearMap, PolyhedralMap2>;

std::size_t order(const Inclusion& f);
std::size_t state_dim(const Inclusion& f);

/// Minimize phi(x(1), ..., x^{(k-1)}(1)) over x^{(k)} in F(x, ..., x^{(k-1)}),
/// x^{(j)}(0) in Q_j.
struct MayerProblem {
  Inclusion F;
  std::vector<Polytope> Q;
  PiecewiseMaxAffine phi;

  std::size_t kappa() const { return order(F); }
  std::size_t n() const { return state_dim(F); }
  bool semilinear() const { return std::holds_alternative<SemilinearMap>(F); }
  const SemilinearMap& semilinear_map() const { return std::get<SemilinearMap>(F); }
  const PolyhedralMap2& polyhedral_map() const { return std::get<PolyhedralMap2>(F); }

  /// Throws std::invalid_argument naming the violated condition.
  void validate() const;
  friend bool operator==(const MayerProblem&, const MayerProblem&) = default;
};

}  // namespace dualdfi::dfi
