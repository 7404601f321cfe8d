#pragma once

#include <vector>

#include "bmv/branch_points.hpp"
#include "bmv/continuation.hpp"
#include "bmv/pair.hpp"
#include "bmv/types.hpp"

namespace bmv::spectral {

// Positively oriented circle |z| = radius with N trapezoidal nodes
// z_k = R e^{2 pi i k / N}; the quadrature weight for a contour integral
// is (2 pi i / N) z_k. Certified to enclose every discriminant zero.
struct SpectralContour {
  double radius = 0.0;
  int nodes = 0;
  std::vector<cx> z;
  std::vector<BranchPoint> enclosed;

  cx weight(int k) const { return cx(0.0, 2.0 * M_PI / nodes) * z[k]; }
};

SpectralContour make_contour(double radius, int nodes,
                             std::vector<BranchPoint> enclosed = {});

// Contour plus the labeled branch table along it (closed: nodes+1 samples,
// sample N re-matched to sample 0).
struct ContourPipeline {
  BranchPointScan scan;
  SpectralContour contour;
  BranchTable table;
  double anchor_t0 = 0.0;
};

// Scan branch points, pick R = max(radius_factor * max |candidate|, 1),
// label at a real anchor, continue onto and around the circle.
// radius_override > 0 forces R (still certified to enclose everything).
ContourPipeline build_contour_table(const core::HermitianPair& pair,
                                    double radius_factor = 1.5,
                                    int min_nodes = 256,
                                    double radius_override = 0.0);

// Doubles the node count of an existing pipeline in place.
void refine_contour_nodes(const core::HermitianPair& pair, ContourPipeline& cp);

// Loop-closure permutation of the (closed) contour table; identity unless
// the continuation went wrong, since branches are single-valued outside
// the branch-point radius.
std::vector<int> contour_monodromy(const core::HermitianPair& pair,
                                   const ContourPipeline& cp);

} // namespace bmv::spectral
