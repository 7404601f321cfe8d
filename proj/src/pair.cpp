#include "bmv/pair.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bmv/errors.hpp"

namespace bmv::core {

HermitianPair::HermitianPair(CMat a_in_b_basis, std::vector<double> b_eigs,
                             CMat basis, PairFlags flags, Tolerances tol)
    : n_(a_in_b_basis.n()), a_(std::move(a_in_b_basis)), b_(std::move(b_eigs)),
      basis_(std::move(basis)), flags_(flags), tol_(tol) {
  a_diag_.resize(n_);
  for (int i = 0; i < n_; ++i) a_diag_[i] = a_(i, i).real();
}

double HermitianPair::b_min_gap() const {
  double g = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < n_; ++i) g = std::min(g, b_[i + 1] - b_[i]);
  return g;
}

HermitianPair validate_pair(const CMat& a_raw, const CMat& b_raw,
                            const Tolerances& tol) {
  if (a_raw.n() < 1) throw DimensionMismatch("matrices must be at least 1x1");
  if (a_raw.n() != b_raw.n())
    throw DimensionMismatch("A is " + std::to_string(a_raw.n()) + "x" +
                            std::to_string(a_raw.n()) + " but B is " +
                            std::to_string(b_raw.n()) + "x" +
                            std::to_string(b_raw.n()));
  const int n = a_raw.n();

  const double herm_a = hermitian_deviation(a_raw);
  if (herm_a > tol.herm * (1.0 + a_raw.max_abs())) throw NotHermitian("A", herm_a);
  const double herm_b = hermitian_deviation(b_raw);
  if (herm_b > tol.herm * (1.0 + b_raw.max_abs())) throw NotHermitian("B", herm_b);

  JacobiResult eig = jacobi_hermitian(b_raw, tol.jacobi * (b_raw.frob_norm() + 1e-300));
  const double psd_tol = tol.psd * (1.0 + b_raw.max_abs());
  if (eig.eigenvalues.front() < -psd_tol)
    throw NotPositiveSemidefinite(eig.eigenvalues.front());

  // A in the eigenbasis of B, re-hermitized to kill rotation roundoff.
  CMat a_t = eig.vectors.dagger() * a_raw * eig.vectors;
  a_t = cx(0.5) * (a_t + a_t.dagger());

  PairFlags flags;
  flags.commuting = commutator_max(a_raw, b_raw) <=
                    tol.comm * (1.0 + a_raw.frob_norm() * b_raw.frob_norm());

  const auto& b = eig.eigenvalues;
  const double b_scale = std::max(1.0, std::abs(b.back()));
  flags.distinct_b = true;
  for (int i = 0; i + 1 < n; ++i)
    if (b[i + 1] - b[i] <= tol.b_tie_rel * b_scale) flags.distinct_b = false;
  flags.positive_b = b.front() > 0.0;

  return HermitianPair(std::move(a_t), b, std::move(eig.vectors), flags, tol);
}

} // namespace bmv::core
