#pragma once

#include <vector>

#include "bmv/types.hpp"

namespace bmv::core {

// Absolute tolerances are scaled internally: herm/psd by (1 + max entry),
// comm by (1 + |A|_F |B|_F), jacobi by |B|_F, match by (1 + |z|).
struct Tolerances {
  double herm = 1e-10;
  double psd = 1e-10;
  double comm = 1e-12;
  double jacobi = 1e-13;
  double root = 1e-10;
  double real = 1e-9;
  double match = 1e-8;
  double b_tie_rel = 1e-9; // relative gap below which b's count as tied
};

struct PairFlags {
  bool commuting = false;
  bool distinct_b = false;
  bool positive_b = false;
};

// A validated (A, B) instance, stored in the eigenbasis of B: B is the
// diagonal matrix of b (ascending) and A has been conjugated accordingly.
class HermitianPair {
public:
  HermitianPair(CMat a_in_b_basis, std::vector<double> b_eigs, CMat basis,
                PairFlags flags, Tolerances tol);

  int n() const { return n_; }
  const CMat& a() const { return a_; }
  const std::vector<double>& b() const { return b_; }
  const CMat& basis() const { return basis_; }
  const PairFlags& flags() const { return flags_; }
  const Tolerances& tol() const { return tol_; }

  // Re(A_jj) in the B-diagonal basis; the imaginary part is zero to
  // validation tolerance.
  const std::vector<double>& a_diag() const { return a_diag_; }

  double b_min_gap() const;

private:
  int n_;
  CMat a_;
  std::vector<double> b_;
  CMat basis_;
  PairFlags flags_;
  Tolerances tol_;
  std::vector<double> a_diag_;
};

// Checks Hermitian-ness of both inputs and positive semidefiniteness of B,
// diagonalizes B by cyclic Jacobi, and returns the pair in B's eigenbasis.
HermitianPair validate_pair(const CMat& a_raw, const CMat& b_raw,
                            const Tolerances& tol = {});

} // namespace bmv::core
