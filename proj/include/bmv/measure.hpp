#pragma once

#include <vector>

#include "bmv/contour.hpp"
#include "bmv/gauss.hpp"
#include "bmv/pair.hpp"
#include "bmv/types.hpp"

namespace bmv::measure {

struct Atom {
  double location; // b_j
  double weight;   // e^{a_jj} > 0
};

struct DensitySample {
  double s;
  double value;
  double err;     // refinement change + quadrature noise estimate
  double im_abs;  // |imaginary part| discarded by realification
};

// Gauss-Legendre block of density samples on one open interval between
// consecutive atom locations.
struct Interval {
  double lo;
  double hi;
  std::size_t first; // index into density
  std::size_t count;
};

struct BmvMeasure {
  std::vector<Atom> atoms;
  std::vector<DensitySample> density;
  std::vector<Interval> intervals;
  GaussRule rule; // reference rule on (-1,1), count = nodes_per_interval
  int nodes_per_interval = 0;

  // build metadata
  double contour_radius = 0.0;
  int contour_nodes = 0;
  double epsilon = 0.0;
  bool commuting_fast_path = false;

  double total_mass() const; // atoms + quadrature of the density
  double max_density() const;
  double min_density() const;
};

struct GridSpec {
  int nodes_per_interval = 32;
  int contour_nodes = 256;
  double radius_factor = 1.5;
  double epsilon = 0.0; // recorded; callers apply perturb_B themselves
};

// Purely atomic measure for a commuting pair: one atom per joint
// eigenvector, weight e^{alpha} with alpha the A-eigenvalue within the
// matching B-eigenspace.
BmvMeasure build_commuting(const core::HermitianPair& pair);

// b_j -> b_j + eps * j (1-based), the diagonal regularization making the
// eigenvalues of B distinct; flags are recomputed, A and basis unchanged.
core::HermitianPair perturb_B(const core::HermitianPair& pair, double eps);

struct OmegaResult {
  double value;
  double err;
  double im_abs;
};

// Density of the representing measure:
//   omega(s) = (1/2 pi i) sum_{j : b_j < s} oint e^{lambda_j(z) + s z} dz
// by trapezoidal quadrature on the contour, using the labeled table.
// For s <= b_1 the sum is empty and the result is exactly zero. For
// s > b_n the sum runs over every branch, which makes the integrand the
// entire function Tr e^{A - z B} e^{s z}; that case is evaluated on a
// small circle instead, where the quadrature does not cancel
// catastrophically (the value is zero either way).
OmegaResult omega_at(const core::HermitianPair& pair, double s,
                     const spectral::SpectralContour& contour,
                     const spectral::BranchTable& table);

// Atoms (b_j, e^{a_jj}) plus density sampled at Gauss-Legendre nodes of
// every interval (b_k, b_{k+1}), one shared contour and branch table for
// all s, with contour nodes doubled until the density stabilizes.
BmvMeasure build_measure(const core::HermitianPair& pair,
                         const GridSpec& grid = {});

} // namespace bmv::measure
