#pragma once

#include <vector>

#include "dualdfi/numerics/dense.hpp"

namespace dualdfi::transcription {

using numerics::Matrix;
using numerics::Vector;

/// Uniform grid t_k = k / N on [0, 1].
struct Grid {
  std::size_t N = 64;

  Grid() = default;
  explicit Grid(std::size_t steps);

  double h() const { return 1.0 / static_cast<double>(N); }
  /// t_0 = 0 and t_N = 1 exactly.
  double t(std::size_t k) const { return k == N ? 1.0 : static_cast<double>(k) / static_cast<double>(N); }

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Weights of the `order`-th derivative at offset `at` on the integer
/// offsets first, first+1, ..., first+count-1 (unit spacing).
std::vector<double> stencil_weights(long first, std::size_t count, long at, std::size_t order);

/// One stencil: samples [first, first+weights.size()) times weights / h^order.
struct Stencil {
  std::size_t first = 0;
  std::vector<double> weights;  // already divided by h^order
};

/// Central window where it fits, otherwise the j+1 nodes at the nearer end.
Stencil central_stencil(std::size_t N, std::size_t k, std::size_t order, double h);

/// Backward window [k-j, k], shifted right to [0, j] near t = 0. This is the
/// stencil the dual argument builders use.
Stencil backward_stencil(std::size_t N, std::size_t k, std::size_t order, double h);

/// D^order of per-node samples with central_stencil. Exact on polynomials of
/// degree <= order. Throws std::invalid_argument when N < order.
std::vector<Vector> finite_difference(const std::vector<Vector>& samples, std::size_t order,
                                      double h);

}  // namespace dualdfi::transcription
