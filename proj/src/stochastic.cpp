#include "repstring/stochastic.hpp"

#include <cmath>

#include "repstring/errors.hpp"
#include "repstring/kernels.hpp"

namespace repstring {

void validate_pmf(std::span<const double> pmf, double tol, int row_tag) {
  if (pmf.empty()) throw NonStochasticError(row_tag, 0.0);
  for (double p : pmf) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw NonStochasticError(row_tag, kernels::ops().sum(pmf.data(), pmf.size()));
    }
  }
  double sum = kernels::ops().sum(pmf.data(), pmf.size());
  if (std::fabs(sum - 1.0) > tol) throw NonStochasticError(row_tag, sum);
}

void validate_row_stochastic(const Mat& m, double tol) {
  for (int r = 0; r < m.rows(); ++r) validate_pmf(m.row(r), tol, r);
}

int inverse_cdf(std::span<const double> pmf, double u) {
  if (pmf.empty()) throw Error("inverse_cdf on empty pmf");
  if (!(u >= 0.0 && u <= 1.0)) throw Error("inverse_cdf argument outside [0,1]");
  if (u == 0.0) {
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      if (pmf[i] > 0.0) return static_cast<int>(i);
    }
    throw Error("inverse_cdf on all-zero pmf");
  }
  double cum = 0.0;
  int last_positive = -1;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    if (pmf[i] > 0.0) last_positive = static_cast<int>(i);
    cum += pmf[i];
    if (cum >= u) return static_cast<int>(i);
  }
  // Rounding left cum a hair under u at the top of the support.
  if (last_positive < 0) throw Error("inverse_cdf on all-zero pmf");
  return last_positive;
}

MutationKernel::MutationKernel(Mat rows) : rows_(std::move(rows)) {
  if (rows_.rows() != rows_.cols()) throw Error("mutation kernel must be square");
  validate_row_stochastic(rows_);
}

InsertionDist::InsertionDist(ProbVec pmf) : pmf_(std::move(pmf)) {
  validate_pmf(pmf_);
}

}  // namespace repstring
