#include "repstring/matrix.hpp"

#include <cmath>

#include "repstring/errors.hpp"

namespace repstring {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw Error("matrix needs at least one row");
  Mat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows(); ++r) {
    if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != m.cols()) {
      throw Error("ragged matrix rows");
    }
    for (int c = 0; c < m.cols(); ++c) {
      m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  }
  return m;
}

Mat Mat::operator*(const Mat& other) const {
  if (cols_ != other.rows_) throw Error("matrix product shape mismatch");
  Mat out(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (int j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  }
  return out;
}

Mat Mat::operator+(const Mat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error("matrix sum shape mismatch");
  }
  Mat out = *this;
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out(i, j) += other(i, j);
  }
  return out;
}

Mat Mat::scaled(double s) const {
  Mat out = *this;
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out(i, j) *= s;
  }
  return out;
}

Mat Mat::pow(int64_t n) const {
  if (rows_ != cols_) throw Error("matrix power needs a square matrix");
  if (n < 0) throw Error("negative matrix power");
  Mat out = Mat::identity(rows_);
  for (int64_t i = 0; i < n; ++i) out = out * (*this);
  return out;
}

std::vector<double> vec_mat(std::span<const double> x, const Mat& a) {
  if (static_cast<int>(x.size()) != a.rows()) throw Error("vec_mat shape mismatch");
  std::vector<double> y(static_cast<std::size_t>(a.cols()), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double xi = x[static_cast<std::size_t>(i)];
    if (xi == 0.0) continue;
    for (int j = 0; j < a.cols(); ++j) y[static_cast<std::size_t>(j)] += xi * a(i, j);
  }
  return y;
}

std::vector<double> solve_linear(Mat a, std::vector<double> b) {
  int n = a.rows();
  if (a.cols() != n || static_cast<int>(b.size()) != n) {
    throw Error("solve_linear shape mismatch");
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::fabs(a(r, col)) > std::fabs(a(pivot, col))) pivot = r;
    }
    if (std::fabs(a(pivot, col)) < 1e-14) throw Error("singular linear system");
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      std::swap(b[static_cast<std::size_t>(pivot)], b[static_cast<std::size_t>(col)]);
    }
    for (int r = col + 1; r < n; ++r) {
      double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
    }
  }
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[static_cast<std::size_t>(r)];
    for (int c = r + 1; c < n; ++c) s -= a(r, c) * x[static_cast<std::size_t>(c)];
    x[static_cast<std::size_t>(r)] = s / a(r, r);
  }
  return x;
}

Mat inverse(const Mat& a) {
  int n = a.rows();
  if (a.cols() != n) throw Error("inverse needs a square matrix");
  Mat out(n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(j)] = 1.0;
    std::vector<double> col = solve_linear(a, std::move(e));
    for (int i = 0; i < n; ++i) out(i, j) = col[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace repstring
