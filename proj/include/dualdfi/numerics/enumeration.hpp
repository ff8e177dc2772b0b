#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dualdfi/numerics/dense.hpp"

namespace dualdfi::numerics {

/// Raised by the brute-force oracle. what() is exactly "unbounded" or
/// "too large for enumeration".
class EnumerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maximum number of candidate row subsets the oracle will try.
inline constexpr double kEnumerationGuard = 1e6;

/// Vertices of {y : G y <= h}, in the order their defining row subsets are
/// visited (lexicographic). Points closer than vertex_tol in the sup norm are
/// merged. An empty polytope yields an empty set.
std::vector<Vector> enumerate_vertices(const Matrix& g, const Vector& h, double vertex_tol = 1e-9);

}  // namespace dualdfi::numerics
