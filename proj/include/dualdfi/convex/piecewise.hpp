#pragma once

#include <vector>

#include "dualdfi/numerics/dense.hpp"

namespace dualdfi::convex {

using numerics::Matrix;
using numerics::Vector;

/// phi(z) = max_i (<c_i, z> + b_i).
class PiecewiseMaxAffine {
 public:
  struct Piece {
    Vector c;
    double b = 0.0;
    friend bool operator==(const Piece&, const Piece&) = default;
  };

  PiecewiseMaxAffine() = default;
  explicit PiecewiseMaxAffine(std::vector<Piece> pieces);

  std::size_t dim() const { return pieces_.empty() ? 0 : pieces_.front().c.size(); }
  const std::vector<Piece>& pieces() const { return pieces_; }

  double value(const Vector& z) const;

  /// Pieces within tol of the maximum, in index order.
  std::vector<std::size_t> active(const Vector& z, double tol) const;

  /// 1e-7 * (1 + |phi(z)|).
  double active_tolerance(const Vector& z) const;

  friend bool operator==(const PiecewiseMaxAffine&, const PiecewiseMaxAffine&) = default;

 private:
  std::vector<Piece> pieces_;
};

/// phi*(z*) = min { -sum lambda_i b_i : sum lambda_i c_i = z*, sum lambda_i = 1,
/// lambda >= 0 }, +inf when z* is outside conv{c_i}.
double conjugate_value(const PiecewiseMaxAffine& phi, const Vector& zstar);

/// Sup-norm distance from g to the convex hull of the active slopes at z.
double subgradient_distance(const PiecewiseMaxAffine& phi, const Vector& z, const Vector& g);

bool subdifferential_contains(const PiecewiseMaxAffine& phi, const Vector& z, const Vector& g,
                              double tol);

/// |phi(z) + phi*(g) - <z, g>|, +inf when phi*(g) is.
double young_residual(const PiecewiseMaxAffine& phi, const Vector& z, const Vector& g);

}  // namespace dualdfi::convex
