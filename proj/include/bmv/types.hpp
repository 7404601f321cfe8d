#pragma once

#include <complex>
#include <vector>

namespace bmv {

using cx = std::complex<double>;

// Dense square complex matrix, row-major. Sizes here are tiny (n <= 16),
// so everything is by value and unoptimized.
class CMat {
public:
  CMat() = default;
  explicit CMat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

  static CMat identity(int n);

  int n() const { return n_; }
  cx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const cx& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }

  CMat dagger() const;
  cx trace() const;
  double frob_norm() const;
  double max_abs() const;

  friend CMat operator+(const CMat& x, const CMat& y);
  friend CMat operator-(const CMat& x, const CMat& y);
  friend CMat operator*(const CMat& x, const CMat& y);
  friend CMat operator*(cx s, const CMat& x);

private:
  int n_ = 0;
  std::vector<cx> a_;
};

// max_ij |A - A^dagger|
double hermitian_deviation(const CMat& a);

// max_ij |AB - BA|
double commutator_max(const CMat& a, const CMat& b);

struct JacobiResult {
  std::vector<double> eigenvalues; // ascending
  CMat vectors;                    // unitary, columns are eigenvectors
  int sweeps = 0;
};

// Cyclic Jacobi for a Hermitian matrix; iterates full sweeps until the
// off-diagonal Frobenius norm drops below off_tol.
JacobiResult jacobi_hermitian(const CMat& a, double off_tol, int max_sweeps = 60);

} // namespace bmv
