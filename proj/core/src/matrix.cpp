#include "igx/matrix.hpp"

#include <Eigen/Core>
#include <cmath>

#include "igx/errors.hpp"

namespace igx {

namespace {

using EigenRowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const EigenRowMajor>;
using Map = Eigen::Map<EigenRowMajor>;

ConstMap map_of(const Matrix& m) {
  return ConstMap(m.data(), static_cast<Eigen::Index>(m.rows()),
                  static_cast<Eigen::Index>(m.cols()));
}

}  // namespace

Matrix Matrix::from_row(std::span<const double> v) {
  Matrix m(1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m(0, i) = v[i];
  return m;
}

std::vector<double> Matrix::col(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void Matrix::set_col(std::size_t c, std::span<const double> v) {
  if (v.size() != rows_) throw ShapeError("set_col: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::take_rows(std::span<const std::size_t> idx) const {
  Matrix out(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= rows_) throw ShapeError("take_rows: index out of range");
    const double* src = data_.data() + idx[i] * cols_;
    double* dst = out.data() + i * cols_;
    for (std::size_t c = 0; c < cols_; ++c) dst[c] = src[c];
  }
  return out;
}

Matrix Matrix::take_cols(std::span<const std::size_t> idx) const {
  Matrix out(rows_, idx.size());
  for (std::size_t c = 0; c < idx.size(); ++c)
    if (idx[c] >= cols_) throw ShapeError("take_cols: index out of range");
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < idx.size(); ++c)
      out(r, c) = (*this)(r, idx[c]);
  return out;
}

bool Matrix::all_finite() const noexcept {
  for (const double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("matmul: inner dim mismatch");
  Matrix out(a.rows(), b.cols());
  Map(out.data(), static_cast<Eigen::Index>(out.rows()),
      static_cast<Eigen::Index>(out.cols())) = map_of(a) * map_of(b);
  return out;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ShapeError("matmul_nt: inner dim mismatch");
  Matrix out(a.rows(), b.rows());
  Map(out.data(), static_cast<Eigen::Index>(out.rows()),
      static_cast<Eigen::Index>(out.cols())) =
      map_of(a) * map_of(b).transpose();
  return out;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ShapeError("matmul_tn: inner dim mismatch");
  Matrix out(a.cols(), b.cols());
  Map(out.data(), static_cast<Eigen::Index>(out.rows()),
      static_cast<Eigen::Index>(out.cols())) =
      map_of(a).transpose() * map_of(b);
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ShapeError("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace igx
