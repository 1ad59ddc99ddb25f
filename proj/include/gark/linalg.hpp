#pragma once

#include "gark/matrix.hpp"

namespace gark {

/// LU factorization with partial pivoting, stored in packed form.
///
/// Factorizations are immutable after creation; solves are const and may be
/// called concurrently.
template <class Scalar>
class LuFactorization {
 public:
  LuFactorization() = default;

  int size() const { return lu_.rows(); }

  /// Solves A x = rhs using the stored factors.
  std::vector<Scalar> solve(const std::vector<Scalar>& rhs) const;

  /// In-place variant; x enters as rhs and leaves as the solution.
  void solve_in_place(std::vector<Scalar>& x) const;

  template <class S>
  friend LuFactorization<S> lu_factor(const DenseMatrix<S>& a);

 private:
  DenseMatrix<Scalar> lu_;
  std::vector<int> pivots_;
  int parity_ = 1;
};

/// Factors a square matrix; throws SingularMatrixError when a pivot falls
/// below 1e-14 * ||A||_inf.
template <class Scalar>
LuFactorization<Scalar> lu_factor(const DenseMatrix<Scalar>& a);

template <class Scalar>
std::vector<Scalar> lu_solve(const LuFactorization<Scalar>& f, const std::vector<Scalar>& rhs) {
  return f.solve(rhs);
}

/// Explicit inverse for the small stage-coefficient matrices (omega blocks).
template <class Scalar>
DenseMatrix<Scalar> invert_small(const DenseMatrix<Scalar>& a);

extern template class LuFactorization<double>;
extern template class LuFactorization<std::complex<double>>;
extern template LuFactorization<double> lu_factor(const RealMatrix&);
extern template LuFactorization<std::complex<double>> lu_factor(const ComplexMatrix&);
extern template RealMatrix invert_small(const RealMatrix&);
extern template ComplexMatrix invert_small(const ComplexMatrix&);

}  // namespace gark
