#include "dualdfi/numerics/linalg.hpp"

#include <cmath>
#include <utility>

namespace dualdfi::numerics {
namespace {

double max_abs_entry(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) m = std::fmax(m, norm_inf(a.row(i)));
  return m;
}

void swap_rows(Matrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  auto ri = a.row(i);
  auto rj = a.row(j);
  for (std::size_t c = 0; c < a.cols(); ++c) std::swap(ri[c], rj[c]);
}

// Reduced row echelon form with full column scan (partial pivoting by
// column). Returns the pivot column of each pivot row.
std::vector<std::size_t> rref(Matrix& a, Vector* rhs, double tol) {
  const double scale = std::fmax(1.0, max_abs_entry(a));
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t best = r;
    double best_abs = std::fabs(a(r, c));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      const double v = std::fabs(a(i, c));
      if (v > best_abs) {
        best_abs = v;
        best = i;
      }
    }
    if (best_abs <= tol * scale) {
      for (std::size_t i = r; i < a.rows(); ++i) a(i, c) = 0.0;
      continue;
    }
    swap_rows(a, r, best);
    if (rhs) std::swap((*rhs)[r], (*rhs)[best]);
    const double p = a(r, c);
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) /= p;
    if (rhs) (*rhs)[r] /= p;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      const double f = a(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
      a(i, c) = 0.0;
      if (rhs) (*rhs)[i] -= f * (*rhs)[r];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<Vector> solve_square(Matrix a, Vector b, double pivot_tol, const kernels::Table& k) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("solve_square: matrix not square");
  require_size(b.size(), n, "solve_square");
  const double scale = std::fmax(1.0, max_abs_entry(a));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = c;
    double best_abs = std::fabs(a(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      const double v = std::fabs(a(i, c));
      if (v > best_abs) {
        best_abs = v;
        best = i;
      }
    }
    if (best_abs <= pivot_tol * scale) return std::nullopt;
    swap_rows(a, c, best);
    std::swap(b[c], b[best]);
    const double p = a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      const double f = a(i, c) / p;
      if (f == 0.0) continue;
      k.axpy(-f, a.row(c).data() + c, a.row(i).data() + c, n - c);
      b[i] -= f * b[c];
    }
  }
  Vector x(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
    x[ii] = s / a(ii, ii);
  }
  return x;
}

std::optional<Matrix> invert(Matrix a, double pivot_tol, const kernels::Table& k) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("invert: matrix not square");
  const double scale = std::fmax(1.0, max_abs_entry(a));
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = c;
    double best_abs = std::fabs(a(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      const double v = std::fabs(a(i, c));
      if (v > best_abs) {
        best_abs = v;
        best = i;
      }
    }
    if (best_abs <= pivot_tol * scale) return std::nullopt;
    swap_rows(a, c, best);
    swap_rows(inv, c, best);
    const double p = 1.0 / a(c, c);
    k.scale(p, a.row(c).data(), n);
    k.scale(p, inv.row(c).data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      const double f = a(i, c);
      if (f == 0.0) continue;
      k.axpy(-f, a.row(c).data(), a.row(i).data(), n);
      k.axpy(-f, inv.row(c).data(), inv.row(i).data(), n);
    }
  }
  return inv;
}

std::size_t rank(Matrix a, double tol) { return rref(a, nullptr, tol).size(); }

AffineSolutionSet solve_affine(const Matrix& e, const Vector& f, double tol) {
  require_size(f.size(), e.rows(), "solve_affine");
  const std::size_t n = e.cols();
  AffineSolutionSet out;
  Matrix a = e;
  Vector rhs = f;
  const double rhs_scale = std::fmax(1.0, norm_inf(f));
  const auto pivots = rref(a, &rhs, tol);
  for (std::size_t i = pivots.size(); i < a.rows(); ++i)
    if (std::fabs(rhs[i]) > 1e-9 * rhs_scale) return out;
  out.consistent = true;
  out.particular.assign(n, 0.0);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    out.particular[pivots[r]] = rhs[r];
    is_pivot[pivots[r]] = true;
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  out.nullspace = Matrix(n, free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t fc = free_cols[k];
    out.nullspace(fc, k) = 1.0;
    for (std::size_t r = 0; r < pivots.size(); ++r) out.nullspace(pivots[r], k) = -a(r, fc);
  }
  return out;
}

}  // namespace dualdfi::numerics
