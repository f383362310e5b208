#include "repstring/kernels.hpp"

#include <cmath>

namespace repstring::kernels {
namespace {

// Neumaier's variant of Kahan summation: the compensation also catches the
// case where the running sum is smaller than the addend.
struct Accum {
  double s = 0.0;
  double c = 0.0;
  void add(double x) {
    double t = s + x;
    if (std::fabs(s) >= std::fabs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  double value() const { return s + c; }
};

double sum_scalar(const double* x, std::size_t n) {
  Accum a;
  for (std::size_t i = 0; i < n; ++i) a.add(x[i]);
  return a.value();
}

double abs_diff_sum_scalar(const double* a, const double* b, std::size_t n) {
  Accum acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(std::fabs(a[i] - b[i]));
  return acc.value();
}

double abs_dev_scaled_sum_scalar(const double* p, double scale, const double* q,
                                 std::size_t n) {
  Accum acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(std::fabs(p[i] - scale * q[i]));
  return acc.value();
}

void add_columns_scalar(double* acc, double* comp, const double* row,
                        std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
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

const Ops& scalar_ops() {
  static const Ops ops{"scalar", &sum_scalar, &abs_diff_sum_scalar,
                       &abs_dev_scaled_sum_scalar, &add_columns_scalar};
  return ops;
}

}  // namespace repstring::kernels
