#include "repstring/kernels.hpp"

#include <cmath>
#include <immintrin.h>

// AVX2 variants. Four independent Neumaier lanes, merged once at the end, so
// the compensation quality matches the scalar reference even though the
// summation order differs.

namespace repstring::kernels {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d abs_pd(__m256d x) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  return _mm256_and_pd(x, mask);
}

struct VecAccum {
  __m256d s = _mm256_setzero_pd();
  __m256d c = _mm256_setzero_pd();
  inline void add(__m256d x) {
    __m256d t = _mm256_add_pd(s, x);
    // branchless |s| >= |x| ? (s-t)+x : (x-t)+s
    __m256d big_s = _mm256_add_pd(_mm256_sub_pd(s, t), x);
    __m256d big_x = _mm256_add_pd(_mm256_sub_pd(x, t), s);
    __m256d pick = _mm256_cmp_pd(abs_pd(s), abs_pd(x), _CMP_GE_OQ);
    c = _mm256_add_pd(c, _mm256_blendv_pd(big_x, big_s, pick));
    s = t;
  }
  double value() const {
    alignas(32) double sv[kLanes];
    alignas(32) double cv[kLanes];
    _mm256_store_pd(sv, s);
    _mm256_store_pd(cv, c);
    // merge lanes with scalar Neumaier
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < kLanes; ++i) {
      for (double x : {sv[i], cv[i]}) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) {
          comp += (sum - t) + x;
        } else {
          comp += (x - t) + sum;
        }
        sum = t;
      }
    }
    return sum + comp;
  }
};

inline void scalar_tail(double& s, double& c, double x) {
  double t = s + x;
  if (std::fabs(s) >= std::fabs(x)) {
    c += (s - t) + x;
  } else {
    c += (x - t) + s;
  }
  s = t;
}

double sum_avx2(const double* x, std::size_t n) {
  VecAccum acc;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) acc.add(_mm256_loadu_pd(x + i));
  double s = acc.value(), c = 0.0;
  for (; i < n; ++i) scalar_tail(s, c, x[i]);
  return s + c;
}

double abs_diff_sum_avx2(const double* a, const double* b, std::size_t n) {
  VecAccum acc;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc.add(abs_pd(d));
  }
  double s = acc.value(), c = 0.0;
  for (; i < n; ++i) scalar_tail(s, c, std::fabs(a[i] - b[i]));
  return s + c;
}

double abs_dev_scaled_sum_avx2(const double* p, double scale, const double* q,
                               std::size_t n) {
  VecAccum acc;
  const __m256d vs = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(p + i),
                              _mm256_mul_pd(vs, _mm256_loadu_pd(q + i)));
    acc.add(abs_pd(d));
  }
  double s = acc.value(), c = 0.0;
  for (; i < n; ++i) scalar_tail(s, c, std::fabs(p[i] - scale * q[i]));
  return s + c;
}

void add_columns_avx2(double* acc, double* comp, const double* row,
                      std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d s = _mm256_loadu_pd(acc + i);
    __m256d x = _mm256_loadu_pd(row + i);
    __m256d t = _mm256_add_pd(s, x);
    __m256d big_s = _mm256_add_pd(_mm256_sub_pd(s, t), x);
    __m256d big_x = _mm256_add_pd(_mm256_sub_pd(x, t), s);
    __m256d pick = _mm256_cmp_pd(abs_pd(s), abs_pd(x), _CMP_GE_OQ);
    __m256d co = _mm256_add_pd(_mm256_loadu_pd(comp + i),
                               _mm256_blendv_pd(big_x, big_s, pick));
    _mm256_storeu_pd(acc + i, t);
    _mm256_storeu_pd(comp + i, co);
  }
  for (; i < n; ++i) {
    double s = acc[i];
    double x = row[i];
    double t = s + x;
    if (std::fabs(s) >= std::fabs(x)) {
      comp[i] += (s - t) + x;
    } else {
      comp[i] += (x - t) + s;
    }
    acc[i] = t;
  }
}

}  // namespace

const Ops* avx2_ops() {
  static const Ops ops{"avx2", &sum_avx2, &abs_diff_sum_avx2,
                       &abs_dev_scaled_sum_avx2, &add_columns_avx2};
  return &ops;
}

}  // namespace repstring::kernels
