#include "repstring/kernels.hpp"

#include <cstdlib>

namespace repstring::kernels {

#if !defined(REPSTRING_HAVE_AVX2_TU)
const Ops* avx2_ops() { return nullptr; }
#endif

namespace {

const Ops& select() {
  const char* off = std::getenv("REPSTRING_NO_SIMD");
  if (off != nullptr && off[0] != '\0' && off[0] != '0') return scalar_ops();
#if defined(REPSTRING_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(__i386__))
  if (__builtin_cpu_supports("avx2")) return *avx2_ops();
#endif
  return scalar_ops();
}

}  // namespace

const Ops& ops() {
  static const Ops& chosen = select();
  return chosen;
}

}  // namespace repstring::kernels
