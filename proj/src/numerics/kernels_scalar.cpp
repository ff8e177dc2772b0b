#include "dualdfi/numerics/kernels.hpp"

#include <cmath>

namespace dualdfi::numerics::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

double max_abs_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::fabs(x[i]);
    if (a > m) m = a;
  }
  return m;
}

}  // namespace

const Table& scalar_table() {
  static const Table t{Backend::Scalar, dot_scalar, axpy_scalar, scale_scalar, max_abs_scalar};
  return t;
}

}  // namespace dualdfi::numerics::kernels
