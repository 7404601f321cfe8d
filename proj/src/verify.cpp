#include "bmv/verify.hpp"

#include <algorithm>
#include <cmath>

#include "bmv/errors.hpp"
#include "bmv/trace.hpp"

namespace bmv::laplace {

using core::HermitianPair;
using measure::BmvMeasure;

std::vector<double> default_probe_points(const HermitianPair& pair, int count) {
  const auto& b = pair.b();
  const int n = pair.n();
  std::vector<double> probes;
  if (n < 2) return probes;

  std::vector<double> cum{0.0};
  for (int k = 0; k + 1 < n; ++k) cum.push_back(cum.back() + (b[k + 1] - b[k]));
  const double total = cum.back();

  for (int i = 0; i < count; ++i) {
    const double p = (i + 0.5) / count * total;
    int k = 0;
    while (k + 2 < n && cum[k + 1] <= p) ++k;
    const double lo = b[k], hi = b[k + 1], len = hi - lo;
    double s = lo + (p - cum[k]);
    // stay away from the atoms
    s = std::min(std::max(s, lo + 0.08 * len), hi - 0.08 * len);
    probes.push_back(s);
  }
  return probes;
}

VerificationReport verify(const HermitianPair& pair, const BmvMeasure& m,
                          const VerifyConfig& cfg) {
  VerificationReport rep;
  rep.n = pair.n();
  rep.commuting = m.commuting_fast_path;
  rep.epsilon = m.epsilon;
  rep.contour_radius = m.contour_radius;
  rep.contour_nodes = m.contour_nodes;

  // Laplace match on the t-grid, both sides computed independently.
  rep.checks.laplace = true;
  for (double t : cfg.t_grid) {
    LaplacePoint p;
    p.t = t;
    p.f = core::trace_exp_real(pair, t);
    p.laplace = laplace_of_measure(m, t);
    p.abs_err = std::abs(p.laplace - p.f);
    p.rel_err = p.abs_err / p.f;
    if (p.rel_err > cfg.tol.laplace_rel) rep.checks.laplace = false;
    rep.laplace_residuals.push_back(p);
  }

  rep.min_density = m.min_density();
  rep.max_density = m.max_density();
  rep.checks.positivity =
      rep.min_density >= -cfg.tol.positivity * (1.0 + rep.max_density);

  rep.checks.realness = true;
  for (const measure::DensitySample& d : m.density)
    if (d.im_abs > cfg.tol.imag * (1.0 + std::abs(d.value)))
      rep.checks.realness = false;

  // Mass balance: L(mu)(0) vs Tr e^A.
  rep.mass_lhs = laplace_of_measure(m, 0.0);
  rep.mass_rhs = core::trace_exp_real(pair, 0.0);
  rep.mass_abs = std::abs(rep.mass_lhs - rep.mass_rhs);
  rep.mass_rel = rep.mass_abs / rep.mass_rhs;
  rep.checks.mass = rep.mass_rel <= cfg.tol.mass_rel;

  // Strict decrease of the Laplace transform whenever B is not zero.
  rep.checks.monotone = true;
  if (pair.b().back() > 0.0) {
    for (std::size_t i = 0; i + 1 < rep.laplace_residuals.size(); ++i) {
      const double t0 = rep.laplace_residuals[i].t;
      const double t1 = rep.laplace_residuals[i + 1].t;
      const double l0 = rep.laplace_residuals[i].laplace;
      const double l1 = rep.laplace_residuals[i + 1].laplace;
      if (t1 > t0 && l1 >= l0) rep.checks.monotone = false;
    }
  }
  rep.monotone_decrease = rep.checks.monotone;

  if (m.commuting_fast_path) {
    // No density: the contour-based checks hold vacuously.
    rep.checks.support = true;
    rep.checks.oracle = true;
    rep.checks.proof = true;
    rep.checks.monodromy = true;
  } else {
    spectral::ContourPipeline cp =
        spectral::build_contour_table(pair, cfg.radius_factor, cfg.contour_nodes);
    rep.checks.monodromy = spectral::is_identity(spectral::contour_monodromy(pair, cp));

    const double b1 = pair.b().front(), bn = pair.b().back();
    rep.checks.support = true;
    rep.support_leakage = 0.0;
    for (double s : {b1 - 0.5, bn + 0.5, bn + 2.0}) {
      const measure::OmegaResult w = measure::omega_at(pair, s, cp.contour, cp.table);
      rep.support_samples.push_back({s, w.value});
      rep.support_leakage = std::max(rep.support_leakage, std::abs(w.value));
    }
    if (rep.support_leakage > cfg.tol.support) rep.checks.support = false;

    const std::vector<double> probes =
        cfg.s_probes.empty() ? default_probe_points(pair) : cfg.s_probes;
    const double oracle_tol =
        std::max(cfg.tol.oracle_abs, cfg.tol.oracle_rel * rep.max_density);
    rep.checks.oracle = true;
    for (double s : probes) {
      OracleGap gap;
      gap.s = s;
      gap.omega = measure::omega_at(pair, s, cp.contour, cp.table).value;
      gap.oracle = bromwich_oracle(pair, s, cfg.oracle);
      gap.gap = std::abs(gap.omega - gap.oracle);
      if (gap.gap > oracle_tol) rep.checks.oracle = false;
      rep.oracle_gaps.push_back(gap);
    }

    // The pole must sit well inside the circle; rebuild wider if needed.
    double t_max = 0.0;
    for (double t : cfg.proof_ts) t_max = std::max(t_max, t);
    spectral::ContourPipeline* proof_cp = &cp;
    spectral::ContourPipeline wide;
    if (1.6 * t_max > cp.contour.radius) {
      wide = spectral::build_contour_table(pair, cfg.radius_factor,
                                           cfg.contour_nodes, 1.6 * t_max);
      proof_cp = &wide;
    }
    rep.checks.proof = true;
    for (double t : cfg.proof_ts) {
      ProofIdentityResult pi =
          proof_identity_check(pair, t, proof_cp->contour, proof_cp->table);
      if (pi.diamond > cfg.tol.proof_diamond) rep.checks.proof = false;
      for (double r : pi.star)
        if (r > cfg.tol.proof_star) rep.checks.proof = false;
      rep.proof_identities.push_back(std::move(pi));
    }
  }

  rep.pass = rep.checks.laplace && rep.checks.positivity && rep.checks.support &&
             rep.checks.mass && rep.checks.oracle && rep.checks.proof &&
             rep.checks.monotone && rep.checks.realness && rep.checks.monodromy;
  return rep;
}

} // namespace bmv::laplace
