#include "bmv/measure.hpp"

#include <algorithm>
#include <cmath>

#include "bmv/accum.hpp"
#include "bmv/charpoly.hpp"
#include "bmv/errors.hpp"
#include "bmv/roots.hpp"
#include "bmv/trace.hpp"

namespace bmv::measure {

using core::HermitianPair;

double BmvMeasure::total_mass() const {
  KahanSum sum;
  for (const Atom& a : atoms) sum.add(a.weight);
  for (const Interval& iv : intervals) {
    const double half = 0.5 * (iv.hi - iv.lo);
    for (std::size_t i = 0; i < iv.count; ++i)
      sum.add(half * rule.weights[i] * density[iv.first + i].value);
  }
  return sum.value();
}

double BmvMeasure::max_density() const {
  double m = 0.0;
  for (const DensitySample& d : density) m = std::max(m, d.value);
  return m;
}

double BmvMeasure::min_density() const {
  if (density.empty()) return 0.0;
  double m = density.front().value;
  for (const DensitySample& d : density) m = std::min(m, d.value);
  return m;
}

BmvMeasure build_commuting(const HermitianPair& pair) {
  if (!pair.flags().commuting) {
    double dev = 0.0;
    for (int i = 0; i < pair.n(); ++i)
      for (int j = 0; j < pair.n(); ++j)
        dev = std::max(dev, std::abs(pair.a()(i, j)) *
                                std::abs(pair.b()[j] - pair.b()[i]));
    throw NotCommuting(dev);
  }
  BmvMeasure m;
  m.commuting_fast_path = true;

  // Group the b's into degenerate clusters; within each B-eigenspace the
  // commuting A restricts to a Hermitian block whose eigenvalues are the
  // joint-eigenbasis diagonal entries.
  const int n = pair.n();
  const auto& b = pair.b();
  const double b_scale = std::max(1.0, std::abs(b.back()));
  int start = 0;
  while (start < n) {
    int stop = start + 1;
    while (stop < n &&
           b[stop] - b[stop - 1] <= pair.tol().b_tie_rel * b_scale)
      ++stop;
    const int size = stop - start;
    std::vector<double> alphas;
    if (size == 1) {
      alphas.push_back(pair.a_diag()[start]);
    } else {
      CMat block(size);
      for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
          block(i, j) = pair.a()(start + i, start + j);
      alphas = jacobi_hermitian(block, 1e-14 * (block.frob_norm() + 1e-300))
                   .eigenvalues;
    }
    for (int k = 0; k < size; ++k)
      m.atoms.push_back({b[start + k], std::exp(alphas[k])});
    start = stop;
  }

  std::sort(m.atoms.begin(), m.atoms.end(), [](const Atom& x, const Atom& y) {
    return x.location != y.location ? x.location < y.location
                                    : x.weight < y.weight;
  });
  return m;
}

HermitianPair perturb_B(const HermitianPair& pair, double eps) {
  const int n = pair.n();
  std::vector<double> b = pair.b();
  for (int j = 0; j < n; ++j) b[j] += eps * (j + 1);

  core::PairFlags flags;
  // Commutator against the new diagonal B: entries A_ij (b_j - b_i).
  double comm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      comm = std::max(comm, std::abs(pair.a()(i, j)) * std::abs(b[j] - b[i]));
  double b_frob = 0.0;
  for (double v : b) b_frob += v * v;
  b_frob = std::sqrt(b_frob);
  flags.commuting =
      comm <= pair.tol().comm * (1.0 + pair.a().frob_norm() * b_frob);

  const double b_scale = std::max(1.0, std::abs(b.back()));
  flags.distinct_b = true;
  for (int i = 0; i + 1 < n; ++i)
    if (b[i + 1] - b[i] <= pair.tol().b_tie_rel * b_scale)
      flags.distinct_b = false;
  flags.positive_b = b.front() > 0.0;

  return HermitianPair(pair.a(), std::move(b), pair.basis(), flags,
                       pair.tol());
}

namespace {

struct QuadratureTerms {
  cx total;
  double max_term;
};

// Accumulates (1/2 pi i) * quadrature with e^{a_jj} factored out of each
// branch's partial sum. Accumulator is swappable so the cancellation
// monitor can escalate from Kahan to double-double.
template <typename Acc>
QuadratureTerms accumulate_omega(const HermitianPair& pair, double s,
                                 const spectral::SpectralContour& contour,
                                 const spectral::BranchTable& table,
                                 int branch_count) {
  const int nodes = contour.nodes;
  Acc total;
  double max_term = 0.0;
  for (int j = 0; j < branch_count; ++j) {
    const double ajj = pair.a_diag()[j];
    Acc partial;
    for (int k = 0; k < nodes; ++k) {
      const cx z = contour.z[k];
      const cx term =
          std::exp(table.values[k][j] + s * z - ajj) * z / double(nodes);
      partial.add(term);
      max_term = std::max(max_term, std::abs(term) * std::exp(ajj));
    }
    total.add(std::exp(ajj) * partial.value());
  }
  return {total.value(), max_term};
}

} // namespace

OmegaResult omega_at(const HermitianPair& pair, double s,
                     const spectral::SpectralContour& contour,
                     const spectral::BranchTable& table) {
  if (!pair.flags().distinct_b || !pair.flags().positive_b)
    throw DegenerateB("omega needs distinct positive eigenvalues of B; "
                      "apply perturb_B first");

  const int n = pair.n();
  int branch_count = 0;
  while (branch_count < n && pair.b()[branch_count] < s) ++branch_count;

  if (branch_count == 0) return {0.0, 0.0, 0.0}; // empty sum, exact zero

  if (branch_count == n && s > pair.b().back()) {
    // Full sum = Tr e^{A - z B} e^{s z}, entire in z, so any circle around
    // the origin works; a small one avoids the e^{(s - b_j) R} blow-up.
    const double r0 = std::min(contour.radius, 1.0);
    const int nodes = contour.nodes;
    KahanComplex acc;
    double max_term = 0.0;
    for (int k = 0; k < nodes; ++k) {
      const cx z = r0 * std::polar(1.0, 2.0 * M_PI * k / nodes);
      const cx term =
          core::trace_exp(pair, z) * std::exp(s * z) * z / double(nodes);
      acc.add(term);
      max_term = std::max(max_term, std::abs(term));
    }
    const cx v = acc.value();
    return {v.real(), std::max(std::abs(v.imag()), max_term * 2e-16),
            std::abs(v.imag())};
  }

  QuadratureTerms q = accumulate_omega<KahanComplex>(pair, s, contour, table,
                                                     branch_count);
  // Cancellation monitor: escalate the accumulation when the summands dwarf
  // the result.
  if (q.max_term > 1e12 * std::max(std::abs(q.total), 1e-300)) {
    q = accumulate_omega<DoubleDoubleComplex>(pair, s, contour, table,
                                              branch_count);
    if (q.max_term * 1e-30 >
        std::max(1e-13, 1e-10 * std::abs(q.total)))
      throw CancellationOverflow(q.max_term, std::abs(q.total));
  }

  const double im = std::abs(q.total.imag());
  return {q.total.real(), std::max(im, q.max_term * 2e-16), im};
}

BmvMeasure build_measure(const HermitianPair& pair, const GridSpec& grid) {
  if (pair.flags().commuting) {
    BmvMeasure m = build_commuting(pair);
    m.epsilon = grid.epsilon;
    return m;
  }
  if (!pair.flags().distinct_b)
    throw DegenerateB("B has repeated eigenvalues; pass epsilon > 0 so that "
                      "perturb_B can make them distinct");
  if (!pair.flags().positive_b)
    throw DegenerateB("B has non-positive eigenvalues; pass epsilon > 0 so "
                      "that perturb_B can shift them");

  const int n = pair.n();
  BmvMeasure m;
  m.nodes_per_interval = grid.nodes_per_interval;
  m.rule = gauss_legendre(grid.nodes_per_interval);
  m.epsilon = grid.epsilon;
  for (int j = 0; j < n; ++j)
    m.atoms.push_back({pair.b()[j], std::exp(pair.a_diag()[j])});

  spectral::ContourPipeline cp =
      spectral::build_contour_table(pair, grid.radius_factor, grid.contour_nodes);

  std::vector<double> s_points;
  for (int k = 0; k + 1 < n; ++k) {
    Interval iv;
    iv.lo = pair.b()[k];
    iv.hi = pair.b()[k + 1];
    iv.first = s_points.size();
    iv.count = static_cast<std::size_t>(grid.nodes_per_interval);
    const double mid = 0.5 * (iv.lo + iv.hi);
    const double half = 0.5 * (iv.hi - iv.lo);
    for (int i = 0; i < grid.nodes_per_interval; ++i)
      s_points.push_back(mid + half * m.rule.nodes[i]);
    m.intervals.push_back(iv);
  }

  auto evaluate_all = [&](std::vector<OmegaResult>& out) {
    out.clear();
    out.reserve(s_points.size());
    for (double s : s_points)
      out.push_back(omega_at(pair, s, cp.contour, cp.table));
  };

  std::vector<OmegaResult> coarse, fine;
  evaluate_all(coarse);
  const int max_nodes = 8192;
  for (;;) {
    spectral::refine_contour_nodes(pair, cp);
    evaluate_all(fine);
    double max_delta = 0.0, max_omega = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
      max_delta = std::max(max_delta, std::abs(fine[i].value - coarse[i].value));
      max_omega = std::max(max_omega, std::abs(fine[i].value));
    }
    if (max_delta <= 1e-10 * (1.0 + max_omega) || cp.contour.nodes >= max_nodes) {
      m.density.resize(s_points.size());
      for (std::size_t i = 0; i < s_points.size(); ++i) {
        m.density[i].s = s_points[i];
        m.density[i].value = fine[i].value;
        m.density[i].err = std::max(
            fine[i].err, std::abs(fine[i].value - coarse[i].value));
        m.density[i].im_abs = fine[i].im_abs;
      }
      break;
    }
    coarse = std::move(fine);
  }

  m.contour_radius = cp.contour.radius;
  m.contour_nodes = cp.contour.nodes;
  return m;
}

} // namespace bmv::measure
