#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace repstring {

// Small dense row-major matrix. Everything in this artifact is desk scale
// (state spaces <= 64), so plain O(n^3) routines are used throughout.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

  static Mat identity(int n);
  static Mat from_rows(const std::vector<std::vector<double>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  double operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  std::span<const double> row(int r) const {
    return {data_.data() + static_cast<std::size_t>(r) * cols_,
            static_cast<std::size_t>(cols_)};
  }

  Mat operator*(const Mat& other) const;
  Mat operator+(const Mat& other) const;
  Mat scaled(double s) const;
  Mat pow(int64_t n) const;  // sequential products; n >= 0

  bool operator==(const Mat&) const = default;

 private:
  int rows_, cols_;
  std::vector<double> data_;
};

// y = x * a  (row vector times matrix)
std::vector<double> vec_mat(std::span<const double> x, const Mat& a);

// Solve a * x = b by Gaussian elimination with partial pivoting.
std::vector<double> solve_linear(Mat a, std::vector<double> b);

Mat inverse(const Mat& a);

}  // namespace repstring
