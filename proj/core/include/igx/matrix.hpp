#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace igx {

// Dense row-major float64 matrix. The one numeric carrier used across the
// project; heavy products are delegated to Eigen maps over the same storage.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix zeros(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols, 0.0);
  }
  static Matrix from_row(std::span<const double> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  std::span<double> row(std::size_t r) {
    return std::span<double>(data_.data() + r * cols_, cols_);
  }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_.data() + r * cols_, cols_);
  }

  std::vector<double> col(std::size_t c) const;
  void set_col(std::size_t c, std::span<const double> v);

  // Rows of this matrix selected by index, in the given order.
  Matrix take_rows(std::span<const std::size_t> idx) const;
  // Columns selected by index, in the given order.
  Matrix take_cols(std::span<const std::size_t> idx) const;

  bool all_finite() const noexcept;

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// out = a * b          (a: n x k, b: k x m)
Matrix matmul(const Matrix& a, const Matrix& b);
// out = a * b^T        (a: n x k, b: m x k)
Matrix matmul_nt(const Matrix& a, const Matrix& b);
// out = a^T * b        (a: k x n, b: k x m)
Matrix matmul_tn(const Matrix& a, const Matrix& b);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace igx
