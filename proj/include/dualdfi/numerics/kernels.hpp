#pragma once

// Vector kernels used by the dense linear algebra and the simplex solver.
//
// Every backend exposes the same table of function pointers. The scalar
// table is the reference; SIMD tables must agree with it bitwise for the
// element-wise kernels (axpy, scale, max_abs) and up to summation-order
// rounding for dot.

#include <cstddef>
#include <string_view>

#if defined(__x86_64__) || defined(_M_X64)
#define DUALDFI_X86 1
#else
#define DUALDFI_X86 0
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
#define DUALDFI_NEON 1
#else
#define DUALDFI_NEON 0
#endif

namespace dualdfi::numerics::kernels {

enum class Backend { Auto, Scalar, Avx2, Neon };

struct Table {
  Backend backend;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // x *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
};

std::string_view name(Backend b);

/// True when the backend was compiled in and the running CPU supports it.
bool available(Backend b);

/// Resolves Auto to the widest available backend; falls back to Scalar for
/// an unavailable request.
const Table& select(Backend b = Backend::Auto);

const Table& scalar_table();

namespace detail {
#if DUALDFI_X86
const Table& avx2_table();
#endif
#if DUALDFI_NEON
const Table& neon_table();
#endif
}  // namespace detail

}  // namespace dualdfi::numerics::kernels
