#include "bmv/branch_points.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bmv/charpoly.hpp"
#include "bmv/continuation.hpp"
#include "bmv/errors.hpp"
#include "bmv/roots.hpp"

namespace bmv::spectral {

using core::char_poly_at;
using core::HermitianPair;
using core::PolyCoeffs;
using core::poly_roots;

cx discriminant_at(const HermitianPair& pair, cx z) {
  const std::vector<cx> roots = poly_roots(char_poly_at(pair, z), pair.tol().root);
  cx d = 1.0;
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      const cx diff = roots[i] - roots[j];
      d *= diff * diff;
    }
  return d;
}

double default_search_radius(const HermitianPair& pair) {
  const double gap = pair.b_min_gap();
  return 4.0 * (1.0 + pair.a().frob_norm()) * (1.0 + 1.0 / gap);
}

namespace {

// prod_{i<j} (b_j - b_i)^2: exact leading z-coefficient of the discriminant.
double exact_leading_coeff(const HermitianPair& pair) {
  double lead = 1.0;
  const auto& b = pair.b();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      lead *= (b[j] - b[i]) * (b[j] - b[i]);
  return lead;
}

// Discriminant as a polynomial in the scaled variable zeta = z / r.
// Interpolated from d+1 samples on the scaled unit circle (inverse DFT).
struct DiscPoly {
  PolyCoeffs poly; // monic in zeta
  cx lead;         // pre-normalization leading coefficient
  double sample_max = 0.0;
};

DiscPoly interpolate_disc(const HermitianPair& pair, double r, int degree) {
  const int m = degree + 1;
  std::vector<cx> samples(m);
  double sample_max = 0.0;
  for (int k = 0; k < m; ++k) {
    const cx z = r * std::polar(1.0, 2.0 * M_PI * k / m);
    samples[k] = discriminant_at(pair, z);
    sample_max = std::max(sample_max, std::abs(samples[k]));
  }

  DiscPoly out;
  out.sample_max = sample_max;
  out.poly.c.assign(m, cx{});
  for (int k = 0; k < m; ++k) {
    cx acc = 0.0;
    for (int j = 0; j < m; ++j)
      acc += samples[j] * std::polar(1.0, -2.0 * M_PI * k * j / m);
    out.poly.c[k] = acc / static_cast<double>(m);
  }
  out.lead = out.poly.c[degree];
  for (cx& c : out.poly.c) c /= out.lead;
  out.poly.c[degree] = 1.0;
  return out;
}

bool certify_interpolation(const HermitianPair& pair, const DiscPoly& dp,
                           double r, int degree) {
  // Leading z-coefficient must match prod (b_j - b_i)^2.
  const double lead_exact = exact_leading_coeff(pair);
  const double lead_interp = (dp.lead / std::pow(r, degree)).real();
  const double lead_tol =
      std::max(1e-7 * dp.sample_max / std::pow(r, degree), 1e-9 * lead_exact);
  if (std::abs(lead_interp - lead_exact) > lead_tol) return false;

  // Re-check on a denser outer circle: interpolation must reproduce direct
  // evaluation there, otherwise the radius was too small for conditioning.
  const double rho = 1.3;
  const int checks = std::max(2 * (degree + 1), 16);
  double direct_max = 0.0;
  std::vector<cx> direct(checks), interp(checks);
  for (int k = 0; k < checks; ++k) {
    const cx zeta = rho * std::polar(1.0, 2.0 * M_PI * (k + 0.5) / checks);
    direct[k] = discriminant_at(pair, r * zeta);
    interp[k] = dp.lead * core::poly_eval(dp.poly, zeta);
    direct_max = std::max(direct_max, std::abs(direct[k]));
  }
  const double tol =
      std::max(1e-6, std::pow(rho, degree) * degree * 1e-13) * direct_max;
  for (int k = 0; k < checks; ++k)
    if (std::abs(direct[k] - interp[k]) > tol) return false;
  return true;
}

std::vector<std::vector<cx>> cluster_points(std::vector<cx> pts, double tol) {
  std::vector<std::vector<cx>> clusters;
  std::sort(pts.begin(), pts.end(), [](cx a, cx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<bool> used(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    std::vector<cx> cluster{pts[i]};
    used[i] = true;
    for (std::size_t k = 0; k < cluster.size(); ++k)
      for (std::size_t j = 0; j < pts.size(); ++j)
        if (!used[j] && std::abs(pts[j] - cluster[k]) <= tol) {
          used[j] = true;
          cluster.push_back(pts[j]);
        }
    clusters.push_back(std::move(cluster));
  }
  return clusters;
}

// A few Newton steps on the direct discriminant sharpen the interpolated
// zero; the derivative is a central difference.
cx polish_disc_zero(const HermitianPair& pair, cx z0) {
  for (int it = 0; it < 4; ++it) {
    const double h = 1e-6 * (1.0 + std::abs(z0));
    const cx d0 = discriminant_at(pair, z0);
    const cx dd =
        (discriminant_at(pair, z0 + h) - discriminant_at(pair, z0 - h)) /
        (2.0 * h);
    if (dd == cx{}) break;
    const cx cand = z0 - d0 / dd;
    if (!(std::abs(cand) < 1e300)) break;
    if (std::abs(discriminant_at(pair, cand)) >= std::abs(d0)) break;
    z0 = cand;
  }
  return z0;
}

int collision_order(const HermitianPair& pair, cx z0) {
  const std::vector<cx> roots = poly_roots(char_poly_at(pair, z0), pair.tol().root);
  double max_abs = 0.0;
  double d_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    max_abs = std::max(max_abs, std::abs(roots[i]));
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      d_min = std::min(d_min, std::abs(roots[i] - roots[j]));
  }
  const double scale = 1.0 + max_abs;
  const double tol =
      std::min(std::max(1e-4 * scale, 4.0 * d_min), 0.1 * scale);
  const auto clusters = cluster_points(roots, tol);
  std::size_t order = 1;
  for (const auto& c : clusters) order = std::max(order, c.size());
  return static_cast<int>(order);
}

BranchPoint classify(const HermitianPair& pair, cx z0, double loop_radius) {
  BranchPoint bp;
  bp.z = z0;
  bp.order = collision_order(pair, z0);

  const cx start = z0 + loop_radius;
  std::vector<cx> roots = poly_roots(char_poly_at(pair, start), pair.tol().root);
  std::sort(roots.begin(), roots.end(), [](cx a, cx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  const Labeling init{start, roots};
  const std::vector<int> perm = monodromy_permutation(pair, z0, loop_radius, init);
  bp.genuine = !is_identity(perm);
  return bp;
}

} // namespace

BranchPointScan scan_branch_points(const HermitianPair& pair,
                                   double search_radius) {
  if (!pair.flags().distinct_b)
    throw DegenerateB("branch point scan needs distinct eigenvalues of B; "
                      "apply perturb_B first");

  BranchPointScan scan;
  const int n = pair.n();
  const int degree = n * (n - 1);
  scan.search_radius = search_radius;
  if (degree == 0) return scan;

  DiscPoly dp;
  for (int attempt = 0;; ++attempt) {
    dp = interpolate_disc(pair, scan.search_radius, degree);
    bool ok = certify_interpolation(pair, dp, scan.search_radius, degree);
    std::vector<cx> zeros;
    if (ok) {
      zeros = poly_roots(dp.poly, pair.tol().root);
      for (cx& zeta : zeros) zeta *= scan.search_radius;
      double far = 0.0;
      for (const cx& z : zeros) far = std::max(far, std::abs(z));
      // All candidates should sit inside the scan circle; widen otherwise
      // so downstream contour certification sees the full set.
      if (far > scan.search_radius) ok = false;
      scan.candidates = std::move(zeros);
      scan.max_candidate_abs = far;
    }
    if (ok || attempt >= 8) {
      if (!ok)
        throw NoConvergence("discriminant scan radius certification", attempt,
                            scan.search_radius);
      break;
    }
    scan.search_radius *= 2.0;
    ++scan.radius_doublings;
  }

  // A double zero of the discriminant is one analytic crossing; merge the
  // numerically split copies before classification.
  const double cluster_tol = 2.5e-3 * scan.search_radius;
  const auto clusters = cluster_points(scan.candidates, cluster_tol);

  std::vector<cx> centers;
  for (const auto& c : clusters) {
    cx mean = 0.0;
    for (const cx& z : c) mean += z;
    centers.push_back(polish_disc_zero(pair, mean / static_cast<double>(c.size())));
  }

  for (std::size_t i = 0; i < centers.size(); ++i) {
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < centers.size(); ++j)
      if (j != i) dmin = std::min(dmin, std::abs(centers[i] - centers[j]));
    double loop = std::isfinite(dmin) ? 0.25 * dmin
                                      : 0.5 * (1.0 + std::abs(centers[i]));
    loop = std::min(loop, 0.5 * (1.0 + std::abs(centers[i])));
    loop = std::max(loop, 5.0 * cluster_tol);
    BranchPoint bp = classify(pair, centers[i], loop);
    if (std::abs(bp.z) <= scan.search_radius * (1.0 + 1e-12))
      scan.inside.push_back(bp);
  }

  std::sort(scan.inside.begin(), scan.inside.end(),
            [](const BranchPoint& x, const BranchPoint& y) {
              return x.z.real() != y.z.real() ? x.z.real() < y.z.real()
                                              : x.z.imag() < y.z.imag();
            });
  return scan;
}

BranchPointScan scan_branch_points(const HermitianPair& pair) {
  return scan_branch_points(pair, default_search_radius(pair));
}

std::vector<BranchPoint> branch_points(const HermitianPair& pair,
                                       double search_radius) {
  return scan_branch_points(pair, search_radius).inside;
}

} // namespace bmv::spectral
