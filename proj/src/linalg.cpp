#include "gark/linalg.hpp"

#include <cmath>

namespace gark {

template <class Scalar>
LuFactorization<Scalar> lu_factor(const DenseMatrix<Scalar>& a) {
  if (a.rows() != a.cols()) throw ShapeError("lu_factor: matrix must be square");
  const int n = a.rows();
  LuFactorization<Scalar> f;
  f.lu_ = a;
  f.pivots_.resize(n);
  f.parity_ = 1;

  // row-sum infinity norm fixes the singularity threshold
  double anorm = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += std::abs(a(i, j));
    anorm = std::max(anorm, s);
  }
  const double tiny = 1e-14 * std::max(anorm, 1e-300);

  auto& lu = f.lu_;
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(lu(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best < tiny) throw SingularMatrixError("lu_factor: pivot below threshold");
    f.pivots_[k] = p;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      f.parity_ = -f.parity_;
    }
    const Scalar piv = lu(k, k);
    for (int i = k + 1; i < n; ++i) {
      Scalar m = lu(i, k) / piv;
      lu(i, k) = m;
      if (m == Scalar{}) continue;
      for (int j = k + 1; j < n; ++j) lu(i, j) -= m * lu(k, j);
    }
  }
  return f;
}

template <class Scalar>
void LuFactorization<Scalar>::solve_in_place(std::vector<Scalar>& x) const {
  const int n = size();
  if (static_cast<int>(x.size()) != n) throw ShapeError("lu_solve: rhs size mismatch");
  // the stored multipliers are the post-pivot ones, so the permutation must
  // be applied in full before the triangular sweeps
  for (int k = 0; k < n; ++k)
    if (pivots_[k] != k) std::swap(x[k], x[pivots_[k]]);
  // row-oriented substitution keeps the factor accesses contiguous
  const Scalar* data = lu_.data().data();
  for (int i = 1; i < n; ++i) {
    const Scalar* row = data + static_cast<std::size_t>(i) * n;
    Scalar s = x[i];
    for (int j = 0; j < i; ++j) s -= row[j] * x[j];
    x[i] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    const Scalar* row = data + static_cast<std::size_t>(i) * n;
    Scalar s = x[i];
    for (int j = i + 1; j < n; ++j) s -= row[j] * x[j];
    x[i] = s / row[i];
  }
}

template <class Scalar>
std::vector<Scalar> LuFactorization<Scalar>::solve(const std::vector<Scalar>& rhs) const {
  std::vector<Scalar> x = rhs;
  solve_in_place(x);
  return x;
}

template <class Scalar>
DenseMatrix<Scalar> invert_small(const DenseMatrix<Scalar>& a) {
  const int n = a.rows();
  auto f = lu_factor(a);
  DenseMatrix<Scalar> inv(n, n);
  std::vector<Scalar> col(n);
  for (int j = 0; j < n; ++j) {
    std::fill(col.begin(), col.end(), Scalar{});
    col[j] = Scalar{1};
    f.solve_in_place(col);
    for (int i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

template class LuFactorization<double>;
template class LuFactorization<std::complex<double>>;
template LuFactorization<double> lu_factor(const RealMatrix&);
template LuFactorization<std::complex<double>> lu_factor(const ComplexMatrix&);
template RealMatrix invert_small(const RealMatrix&);
template ComplexMatrix invert_small(const ComplexMatrix&);

}  // namespace gark
