#include "bmv/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bmv/errors.hpp"

namespace bmv {

CMat CMat::identity(int n) {
  CMat m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::dagger() const {
  CMat r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

cx CMat::trace() const {
  cx t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double CMat::frob_norm() const {
  double s = 0.0;
  for (const cx& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double CMat::max_abs() const {
  double m = 0.0;
  for (const cx& v : a_) m = std::max(m, std::abs(v));
  return m;
}

CMat operator+(const CMat& x, const CMat& y) {
  CMat r(x.n_);
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
  return r;
}

CMat operator-(const CMat& x, const CMat& y) {
  CMat r(x.n_);
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
  return r;
}

CMat operator*(const CMat& x, const CMat& y) {
  const int n = x.n_;
  CMat r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const cx xik = x(i, k);
      if (xik == cx{}) continue;
      for (int j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

CMat operator*(cx s, const CMat& x) {
  CMat r(x.n_);
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = s * x.a_[i];
  return r;
}

double hermitian_deviation(const CMat& a) {
  double m = 0.0;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

double commutator_max(const CMat& a, const CMat& b) {
  return (a * b - b * a).max_abs();
}

namespace {

double off_diag_norm(const CMat& a) {
  double s = 0.0;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q). Updates a and accumulates v.
void rotate(CMat& a, CMat& v, int p, int q) {
  const cx apq = a(p, q);
  const double m = std::abs(apq);
  if (m == 0.0) return;
  const cx u = apq / m;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * m);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const int n = a.n();
  for (int i = 0; i < n; ++i) {
    if (i == p || i == q) continue;
    const cx aip = a(i, p);
    const cx aiq = a(i, q);
    a(i, p) = c * aip - s * std::conj(u) * aiq;
    a(i, q) = s * u * aip + c * aiq;
    a(p, i) = std::conj(a(i, p));
    a(q, i) = std::conj(a(i, q));
  }
  a(p, p) = app - t * m;
  a(q, q) = aqq + t * m;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  for (int i = 0; i < n; ++i) {
    const cx vip = v(i, p);
    const cx viq = v(i, q);
    v(i, p) = c * vip - s * std::conj(u) * viq;
    v(i, q) = s * u * vip + c * viq;
  }
}

} // namespace

JacobiResult jacobi_hermitian(const CMat& a, double off_tol, int max_sweeps) {
  const int n = a.n();
  CMat work = a;
  CMat v = CMat::identity(n);

  int sweeps = 0;
  while (off_diag_norm(work) > off_tol) {
    if (sweeps++ >= max_sweeps)
      throw NoConvergence("Jacobi eigensolver", sweeps, off_diag_norm(work));
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) rotate(work, v, p, q);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return work(i, i).real() < work(j, j).real();
  });

  JacobiResult r;
  r.eigenvalues.resize(n);
  r.vectors = CMat(n);
  for (int j = 0; j < n; ++j) {
    r.eigenvalues[j] = work(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) r.vectors(i, j) = v(i, order[j]);
  }
  r.sweeps = sweeps;
  return r;
}

} // namespace bmv
