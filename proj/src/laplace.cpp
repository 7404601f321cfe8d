#include "bmv/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bmv/accum.hpp"
#include "bmv/errors.hpp"
#include "bmv/trace.hpp"

namespace bmv::laplace {

using core::HermitianPair;
using measure::BmvMeasure;

double laplace_of_measure(const BmvMeasure& m, double t) {
  KahanSum sum;
  for (const measure::Atom& a : m.atoms) sum.add(a.weight * std::exp(-t * a.location));
  for (const measure::Interval& iv : m.intervals) {
    const double half = 0.5 * (iv.hi - iv.lo);
    for (std::size_t i = 0; i < iv.count; ++i) {
      const measure::DensitySample& d = m.density[iv.first + i];
      sum.add(half * m.rule.weights[i] * d.value * std::exp(-t * d.s));
    }
  }
  return sum.value();
}

namespace {

cx g_at_iy(const HermitianPair& pair, double y) {
  cx atoms = 0.0;
  for (int j = 0; j < pair.n(); ++j)
    atoms += std::exp(cx(pair.a_diag()[j], -y * pair.b()[j]));
  return core::trace_exp(pair, cx(0.0, y)) - atoms;
}

} // namespace

double bromwich_oracle(const HermitianPair& pair, double s,
                       const OracleConfig& cfg) {
  if (!pair.flags().distinct_b || !pair.flags().positive_b)
    throw DegenerateB("oracle needs distinct positive eigenvalues of B");
  const auto& b = pair.b();
  const double span = b.back() - b.front();

  double dist = std::numeric_limits<double>::infinity();
  for (double bj : b) dist = std::min(dist, std::abs(s - bj));
  if (dist == 0.0)
    throw NumericalError("oracle probe coincides with an atom location");

  const double delta0 = std::min(dist / 8.0, 0.05 * std::max(span, 1e-6));
  const double deltas[3] = {delta0, delta0 / std::sqrt(2.0), delta0 / 2.0};

  const double freq = std::max(std::abs(s - b.front()), std::abs(s - b.back()));
  const double h_fine = M_PI / (2.0 * freq + 4.0) * (48.0 / cfg.m) / 2.0;
  const double y_max = 9.0 / deltas[2];
  const std::size_t count = static_cast<std::size_t>(y_max / h_fine) + 1;
  if (count > 4'000'000)
    throw NumericalError("oracle grid too large; probe point too close to an "
                         "atom location");

  // Cache Re[g(iy) e^{iys}] on the fine grid; both resolutions and all
  // mollifier widths reuse it.
  std::vector<double> gs(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double y = k * h_fine;
    gs[k] = (g_at_iy(pair, y) * std::exp(cx(0.0, y * s))).real();
  }

  auto level = [&](int stride) {
    const double h = h_fine * stride;
    double v[3];
    for (int d = 0; d < 3; ++d) {
      const double delta = deltas[d];
      KahanSum acc;
      for (std::size_t k = 0; k < count; k += stride) {
        const double y = k * h_fine;
        const double damp = std::exp(-0.5 * y * y * delta * delta);
        if (y > 0.0 && damp < 1e-18) break;
        acc.add((k == 0 ? 0.5 : 1.0) * gs[k] * damp);
      }
      v[d] = acc.value() * h / M_PI;
    }
    // Gaussian smoothing bias is a series in delta^2; two Richardson levels.
    const double t11 = 2.0 * v[1] - v[0];
    const double t12 = 2.0 * v[2] - v[1];
    return (4.0 * t12 - t11) / 3.0;
  };

  const double coarse = level(2);
  const double fine = level(1);
  if (std::abs(fine - coarse) > cfg.tol * (1.0 + std::abs(fine)))
    throw OracleUnstable(std::abs(fine - coarse), cfg.tol);
  return fine;
}

ProofIdentityResult proof_identity_check(const HermitianPair& pair, double t,
                                         const spectral::SpectralContour& contour,
                                         const spectral::BranchTable& table) {
  const double r = contour.radius;
  if (t < 0.0 || std::abs(r - t) < 0.1 * r || t > r)
    throw PoleTooCloseToContour(t, r);

  const int n = pair.n();
  const int nodes = contour.nodes;
  const double bn = pair.b().back();

  ProofIdentityResult res;
  res.t = t;

  KahanComplex diamond;
  for (int k = 0; k < nodes; ++k) {
    const cx z = contour.z[k];
    cx f = 0.0;
    for (int j = 0; j < n; ++j) f += std::exp(table.values[k][j]);
    diamond.add(f * std::exp(bn * (z - t)) / (z - t) * z / double(nodes));
  }
  // Plain circle encloses the pole at t, so the vanishing identity picks up
  // the residue f(t).
  res.diamond = std::abs(diamond.value() - core::trace_exp_real(pair, t));

  res.star.resize(n);
  for (int j = 0; j < n; ++j) {
    const double bj = pair.b()[j];
    KahanComplex acc;
    for (int k = 0; k < nodes; ++k) {
      const cx z = contour.z[k];
      acc.add(std::exp(table.values[k][j] + bj * (z - t)) / (z - t) * z /
              double(nodes));
    }
    res.star[j] =
        std::abs(acc.value() - std::exp(pair.a_diag()[j] - bj * t));
  }
  return res;
}

} // namespace bmv::laplace
