#pragma once

#include <vector>

#include "bmv/pair.hpp"
#include "bmv/types.hpp"

namespace bmv::spectral {

struct BranchPoint {
  cx z;
  int order = 2;       // local root multiplicity of the colliding branches
  bool genuine = false; // nontrivial monodromy around it
};

// All discriminant zeros of z -> disc_lambda(char_poly(pair, z)) known to
// the scan. `inside` carries the classified points with |z| <= search_radius
// (the public contract); `candidates` keeps every zero of the interpolated
// discriminant polynomial, classified or not, for contour certification.
struct BranchPointScan {
  std::vector<BranchPoint> inside;
  std::vector<cx> candidates;
  double search_radius = 0.0;
  double max_candidate_abs = 0.0;
  int radius_doublings = 0;
};

double default_search_radius(const core::HermitianPair& pair);

// Discriminant zeros inside |z| <= search_radius, each classified
// genuine/spurious by a small-loop monodromy test. Requires distinct b.
std::vector<BranchPoint> branch_points(const core::HermitianPair& pair,
                                       double search_radius);

// Same machinery with the default radius plus the doubling re-certification
// loop; exposes the candidate set used to certify contour radii.
BranchPointScan scan_branch_points(const core::HermitianPair& pair);
BranchPointScan scan_branch_points(const core::HermitianPair& pair,
                                   double search_radius);

// disc(p) = prod_{i<j} (r_i - r_j)^2 over the lambda-roots at fixed z.
cx discriminant_at(const core::HermitianPair& pair, cx z);

} // namespace bmv::spectral
