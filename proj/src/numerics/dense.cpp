#include "dualdfi/numerics/dense.hpp"

#include <cmath>

namespace dualdfi::numerics {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_size(rows[i].size(), cols, "Matrix::from_rows: row " + std::to_string(i));
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vector Matrix::multiply(std::span<const double> x) const {
  require_size(x.size(), cols_, "Matrix::multiply");
  Vector y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) y[i] = numerics::dot(row(i), x);
  return y;
}

Vector Matrix::transpose_multiply(std::span<const double> y) const {
  require_size(y.size(), rows_, "Matrix::transpose_multiply");
  Vector x(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (y[i] == 0.0) continue;
    for (std::size_t j = 0; j < cols_; ++j) x[j] += y[i] * (*this)(i, j);
  }
  return x;
}

bool Matrix::all_finite() const { return numerics::all_finite(data_); }

double dot(std::span<const double> a, std::span<const double> b) {
  require_size(b.size(), a.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::fmax(m, std::fabs(v));
  return m;
}

double norm2(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

bool all_finite(std::span<const double> a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

Vector add(std::span<const double> a, std::span<const double> b) {
  require_size(b.size(), a.size(), "add");
  Vector r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
  require_size(b.size(), a.size(), "subtract");
  Vector r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vector scaled(std::span<const double> a, double s) {
  Vector r(a.begin(), a.end());
  for (double& v : r) v *= s;
  return r;
}

void require_size(std::size_t got, std::size_t expected, const std::string& what) {
  if (got != expected)
    throw std::invalid_argument(what + ": dimension mismatch (got " + std::to_string(got) +
                                ", expected " + std::to_string(expected) + ")");
}

}  // namespace dualdfi::numerics
