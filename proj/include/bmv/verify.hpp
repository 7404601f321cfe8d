#pragma once

#include <string>
#include <vector>

#include "bmv/laplace.hpp"
#include "bmv/measure.hpp"
#include "bmv/pair.hpp"

namespace bmv::laplace {

struct VerifyTolerances {
  double laplace_rel = 1e-6;
  double positivity = 1e-6;      // min density >= -positivity * (1 + max density)
  double support = 1e-6;
  double mass_rel = 1e-6;
  double oracle_abs = 1e-4;      // effective: max(oracle_abs, oracle_rel * max density)
  double oracle_rel = 1e-3;
  double proof_diamond = 1e-8;
  double proof_star = 1e-6;
  double imag = 1e-8;            // density realness, scaled by (1 + |value|)
};

struct LaplacePoint {
  double t, f, laplace, abs_err, rel_err;
};

struct SupportSample {
  double s, omega;
};

struct OracleGap {
  double s, omega, oracle, gap;
};

struct ReportChecks {
  bool laplace = false;
  bool positivity = false;
  bool support = false;
  bool mass = false;
  bool oracle = false;
  bool proof = false;
  bool monotone = false;
  bool realness = false;
  bool monodromy = false;
};

struct VerificationReport {
  std::vector<LaplacePoint> laplace_residuals;
  double min_density = 0.0;
  double max_density = 0.0;
  std::vector<SupportSample> support_samples;
  double support_leakage = 0.0;
  double mass_lhs = 0.0; // L(mu)(0)
  double mass_rhs = 0.0; // Tr e^A
  double mass_abs = 0.0;
  double mass_rel = 0.0;
  std::vector<OracleGap> oracle_gaps;
  std::vector<ProofIdentityResult> proof_identities;
  bool monotone_decrease = true;
  ReportChecks checks;
  bool pass = false;

  // context echoed into the serialized report
  int n = 0;
  bool commuting = false;
  double epsilon = 0.0;
  double contour_radius = 0.0;
  int contour_nodes = 0;
  std::string atom_weight_convention = "exp(a_jj)";
};

struct VerifyConfig {
  std::vector<double> t_grid = {0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0};
  std::vector<double> s_probes;       // empty: 5 spread interior points
  std::vector<double> proof_ts = {0.7, 1.3};
  VerifyTolerances tol;
  OracleConfig oracle;
  double radius_factor = 1.5;
  int contour_nodes = 256;
};

// Deterministic interior probe points, spread across the atom intervals
// proportionally to length and kept away from the atoms.
std::vector<double> default_probe_points(const core::HermitianPair& pair,
                                         int count = 5);

// Runs every check against the measure; failures are report entries, never
// exceptions. Density-dependent checks are vacuous for a purely atomic
// (commuting) measure.
VerificationReport verify(const core::HermitianPair& pair,
                          const measure::BmvMeasure& m,
                          const VerifyConfig& cfg = {});

} // namespace bmv::laplace
