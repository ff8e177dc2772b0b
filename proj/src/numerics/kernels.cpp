#include "dualdfi/numerics/kernels.hpp"

#include <cstdlib>
#include <string>

namespace dualdfi::numerics::kernels {

std::string_view name(Backend b) {
  switch (b) {
    case Backend::Auto: return "auto";
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

bool available(Backend b) {
  switch (b) {
    case Backend::Auto:
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if DUALDFI_X86
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::Neon:
      return DUALDFI_NEON != 0;
  }
  return false;
}

const Table& select(Backend b) {
  if (b == Backend::Auto) {
    // DUALDFI_KERNELS=scalar|avx2|neon pins the choice when available.
    if (const char* env = std::getenv("DUALDFI_KERNELS")) {
      for (Backend c : {Backend::Scalar, Backend::Avx2, Backend::Neon})
        if (name(c) == env && available(c)) b = c;
    }
  }
  if (b == Backend::Auto) {
    if (available(Backend::Avx2)) b = Backend::Avx2;
    else if (available(Backend::Neon)) b = Backend::Neon;
    else b = Backend::Scalar;
  }
#if DUALDFI_X86
  if (b == Backend::Avx2 && available(b)) return detail::avx2_table();
#endif
#if DUALDFI_NEON
  if (b == Backend::Neon) return detail::neon_table();
#endif
  return scalar_table();
}

}  // namespace dualdfi::numerics::kernels
