#pragma once

#include <span>
#include <vector>

#include "repstring/matrix.hpp"

namespace repstring {

using ProbVec = std::vector<double>;

constexpr double kStochasticTol = 1e-12;

// Throw NonStochasticError unless entries are >= 0 and sum to 1 within tol.
void validate_pmf(std::span<const double> pmf, double tol = kStochasticTol,
                  int row_tag = 0);
void validate_row_stochastic(const Mat& m, double tol = kStochasticTol);

// Smallest index whose cumulative mass reaches u; u = 0 maps to the first
// index of positive mass. Realizes both the mutation map g(a, u) (applied to
// a kernel row) and the insertion map h(u) (applied to the insertion pmf).
int inverse_cdf(std::span<const double> pmf, double u);

// Row-stochastic m x m matrix; entry (a, b) is the probability that symbol a
// is replaced by b when a mutation fires ("no mutation" lives on the diagonal).
class MutationKernel {
 public:
  explicit MutationKernel(Mat rows);
  static MutationKernel identity(int m) { return MutationKernel(Mat::identity(m)); }
  int size() const { return rows_.rows(); }
  std::span<const double> row(int symbol) const { return rows_.row(symbol); }
  const Mat& matrix() const { return rows_; }

 private:
  Mat rows_;
};

class InsertionDist {
 public:
  explicit InsertionDist(ProbVec pmf);
  int size() const { return static_cast<int>(pmf_.size()); }
  std::span<const double> pmf() const { return pmf_; }

 private:
  ProbVec pmf_;
};

}  // namespace repstring
