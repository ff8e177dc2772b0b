#pragma once

#include <optional>

#include "dualdfi/numerics/dense.hpp"
#include "dualdfi/numerics/kernels.hpp"

namespace dualdfi::numerics {

/// Solves A x = b by Gaussian elimination with partial pivoting. Returns
/// nullopt when a pivot falls below `pivot_tol * max(1, max|A|)`.
std::optional<Vector> solve_square(Matrix a, Vector b, double pivot_tol = 1e-12,
                                   const kernels::Table& k = kernels::select());

/// Gauss-Jordan inverse with partial pivoting; nullopt when singular.
std::optional<Matrix> invert(Matrix a, double pivot_tol = 1e-12,
                             const kernels::Table& k = kernels::select());

/// Numerical rank via full-pivot elimination.
std::size_t rank(Matrix a, double tol = 1e-10);

/// Solution set of E x = f written as {particular + nullspace * y}.
/// `nullspace` has E.cols() rows and one column per free direction.
struct AffineSolutionSet {
  bool consistent = false;
  Vector particular;
  Matrix nullspace;
};

AffineSolutionSet solve_affine(const Matrix& e, const Vector& f, double tol = 1e-10);

}  // namespace dualdfi::numerics
