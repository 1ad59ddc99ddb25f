#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "gark/errors.hpp"

namespace gark {

using Vec = std::vector<double>;
using CVec = std::vector<std::complex<double>>;

/// Dense row-major matrix over real or complex scalars.
///
/// Stage counts are tiny and state dimensions are desk scale, so everything
/// is stored dense; no sparsity or banding is exploited anywhere.
template <class Scalar>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, Scalar fill = Scalar{})
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  /// Builds a matrix from nested initializer-style data (row major).
  static DenseMatrix from_rows(const std::vector<std::vector<Scalar>>& rows) {
    if (rows.empty()) return DenseMatrix(0, 0);
    DenseMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
      if (static_cast<int>(rows[i].size()) != m.cols())
        throw ShapeError("from_rows: ragged row data");
      for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar{1};
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Scalar& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<Scalar>& data() const { return data_; }
  std::vector<Scalar>& data() { return data_; }

  bool same_shape(const DenseMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  /// y = A x
  std::vector<Scalar> apply(const std::vector<Scalar>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw ShapeError("apply: size mismatch");
    std::vector<Scalar> y(rows_, Scalar{});
    for (int i = 0; i < rows_; ++i) {
      Scalar acc{};
      const Scalar* row = &data_[static_cast<std::size_t>(i) * cols_];
      for (int j = 0; j < cols_; ++j) acc += row[j] * x[j];
      y[i] = acc;
    }
    return y;
  }

  DenseMatrix operator+(const DenseMatrix& o) const {
    if (!same_shape(o)) throw ShapeError("matrix add: shape mismatch");
    DenseMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
    return r;
  }

  DenseMatrix matmul(const DenseMatrix& o) const {
    if (cols_ != o.rows_) throw ShapeError("matmul: inner dimension mismatch");
    DenseMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        Scalar a = (*this)(i, k);
        if (a == Scalar{}) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  bool all_finite() const {
    for (const auto& v : data_)
      if (!std::isfinite(std::abs(v))) return false;
    return true;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> data_;
};

using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<std::complex<double>>;

// -- small vector helpers used throughout ------------------------------------

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline void axpy(double a, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline double norm_inf(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double norm2(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// Kahan-compensated accumulator for a state vector; keeps the summation
/// error of multi-million-step runs at the level of a single rounding.
class CompensatedVec {
 public:
  explicit CompensatedVec(const Vec& v) : value_(v), comp_(v.size(), 0.0) {}

  /// value += a * dv, compensated.
  void add_scaled(double a, const Vec& dv) {
    for (std::size_t i = 0; i < value_.size(); ++i) {
      double term = a * dv[i] - comp_[i];
      double t = value_[i] + term;
      comp_[i] = (t - value_[i]) - term;
      value_[i] = t;
    }
  }

  const Vec& value() const { return value_; }

 private:
  Vec value_;
  Vec comp_;
};

}  // namespace gark
