#pragma once

#include <vector>

#include "bmv/contour.hpp"
#include "bmv/measure.hpp"
#include "bmv/pair.hpp"

namespace bmv::laplace {

// L(mu)(t) = sum_j w_j e^{-t b_j} + sum over density samples with their
// Gauss-Legendre weights, in ascending-s order.
double laplace_of_measure(const measure::BmvMeasure& m, double t);

struct OracleConfig {
  int m = 48;          // y-grid resolution factor; 2m halves the step
  double tol = 1e-5;   // refinement stability tolerance (scaled by 1+|value|)
};

// Independent density oracle: inverse Laplace transform of
//   g(t) = Tr e^{A - t B} - sum_j e^{a_jj - t b_j}
// evaluated at s. The transform of a compactly supported density grows like
// e^{b_n |Re z|} in the left half-plane, so contour methods that descend
// into it (Talbot et al.) diverge here; instead g is paired with a Gaussian
// test function on the Bromwich line Re z = 0,
//   (omega * G_delta)(s) = (1/pi) int_0^inf Re[g(iy) e^{iys}] e^{-y^2 d^2/2} dy,
// and the mollifier width is Richardson-extrapolated to zero. Never touches
// branch labels or the contour table.
double bromwich_oracle(const core::HermitianPair& pair, double s,
                       const OracleConfig& cfg = {});

struct ProofIdentityResult {
  double t = 0.0;
  double diamond = 0.0;            // residual of the all-branches identity
  std::vector<double> star;        // per-branch residuals
};

// Replays the two contour identities behind the Laplace reconstruction on
// the plain circle |z| = R with t inside:
//   (1/2 pi i) oint f(z) e^{b_n (z-t)}/(z-t) dz                = f(t)
//   (1/2 pi i) oint e^{lambda_j(z)} e^{b_j (z-t)}/(z-t) dz     = e^{a_jj - b_j t}
// The first is the vanishing statement for a contour that excludes t, moved
// across the pole (the enclosed residue is f(t)); likewise the second
// combines the pole residue -e^{lambda_j(t)} with the residue at infinity.
ProofIdentityResult proof_identity_check(const core::HermitianPair& pair,
                                         double t,
                                         const spectral::SpectralContour& contour,
                                         const spectral::BranchTable& table);

} // namespace bmv::laplace
