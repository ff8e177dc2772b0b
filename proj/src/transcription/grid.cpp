#include "dualdfi/transcription/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace dualdfi::transcription {

Grid::Grid(std::size_t steps) : N(steps) {
  if (steps < 1) throw std::invalid_argument("grid: N must be at least 1");
}

// Fornberg's recursion, specialised to integer nodes.
std::vector<double> stencil_weights(long first, std::size_t count, long at, std::size_t order) {
  if (count == 0 || order >= count) throw std::invalid_argument("stencil_weights: too few nodes");
  const std::size_t n = count - 1;
  std::vector<double> x(count);
  for (std::size_t i = 0; i < count; ++i) x[i] = static_cast<double>(first + static_cast<long>(i) - at);
  // c[i][m]: weight of node i for derivative m
  std::vector<std::vector<double>> c(count, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0];
  c[0][0] = 1.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i];
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(count);
  for (std::size_t i = 0; i < count; ++i) w[i] = c[i][order];
  return w;
}

namespace {

Stencil make(std::size_t first, std::size_t count, std::size_t k, std::size_t order, double h) {
  Stencil s;
  s.first = first;
  s.weights = stencil_weights(static_cast<long>(first), count, static_cast<long>(k), order);
  const double scale = std::pow(h, static_cast<double>(order));
  for (double& w : s.weights) w /= scale;
  return s;
}

void require_nodes(std::size_t N, std::size_t order) {
  if (N < order)
    throw std::invalid_argument("finite_difference: grid too short for order " +
                                std::to_string(order));
}

}  // namespace

Stencil central_stencil(std::size_t N, std::size_t k, std::size_t order, double h) {
  require_nodes(N, order);
  if (order == 0) return {k, {1.0}};
  const std::size_t half = (order + 1) / 2;
  if (k >= half && k + half <= N) return make(k - half, 2 * half + 1, k, order, h);
  if (k < half) return make(0, order + 1, k, order, h);
  return make(N - order, order + 1, k, order, h);
}

Stencil backward_stencil(std::size_t N, std::size_t k, std::size_t order, double h) {
  require_nodes(N, order);
  if (order == 0) return {k, {1.0}};
  const std::size_t first = k >= order ? k - order : 0;
  return make(first, order + 1, k, order, h);
}

std::vector<Vector> finite_difference(const std::vector<Vector>& samples, std::size_t order,
                                      double h) {
  if (samples.empty()) throw std::invalid_argument("finite_difference: no samples");
  const std::size_t N = samples.size() - 1;
  const std::size_t n = samples.front().size();
  std::vector<Vector> out(N + 1, Vector(n, 0.0));
  for (std::size_t k = 0; k <= N; ++k) {
    const Stencil s = central_stencil(N, k, order, h);
    for (std::size_t i = 0; i < s.weights.size(); ++i) {
      const Vector& x = samples[s.first + i];
      numerics::require_size(x.size(), n, "finite_difference");
      for (std::size_t c = 0; c < n; ++c) out[k][c] += s.weights[i] * x[c];
    }
  }
  return out;
}

}  // namespace dualdfi::transcription
