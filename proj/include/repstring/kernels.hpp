#pragma once

#include <cstddef>

namespace repstring::kernels {

// Reduction kernels behind the probability-table arithmetic (total variation,
// independence deviations, marginalization). All variants accumulate with
// Neumaier compensation so that million-cell tables stay near 1 ulp.
//
// scalar_ops() is the reference implementation. avx2_ops() is non-null when
// the binary carries the AVX2 translation unit; ops() picks the widest variant
// the CPU supports at runtime (set REPSTRING_NO_SIMD=1 to force scalar).
struct Ops {
  const char* name;
  // sum of x[0..n)
  double (*sum)(const double* x, std::size_t n);
  // sum of |a[i] - b[i]|
  double (*abs_diff_sum)(const double* a, const double* b, std::size_t n);
  // sum of |p[i] - scale * q[i]|
  double (*abs_dev_scaled_sum)(const double* p, double scale, const double* q,
                               std::size_t n);
  // acc[i] += row[i], per-element compensation kept in comp[i]
  void (*add_columns)(double* acc, double* comp, const double* row,
                      std::size_t n);
};

const Ops& scalar_ops();
const Ops* avx2_ops();
const Ops& ops();

}  // namespace repstring::kernels
