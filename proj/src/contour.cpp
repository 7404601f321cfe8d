#include "bmv/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bmv/errors.hpp"

namespace bmv::spectral {

using core::HermitianPair;

SpectralContour make_contour(double radius, int nodes,
                             std::vector<BranchPoint> enclosed) {
  if (radius <= 0.0) throw NumericalError("contour radius must be positive");
  if (nodes < 4 || nodes % 2 != 0)
    throw NumericalError("contour node count must be even and >= 4");

  SpectralContour c;
  c.radius = radius;
  c.nodes = nodes;
  c.enclosed = std::move(enclosed);
  c.z.resize(nodes);
  for (int k = 0; k < nodes; ++k)
    c.z[k] = radius * std::polar(1.0, 2.0 * M_PI * k / nodes);

  // Quadrature sanity: resolvent of the simple pole, (1/2pi i) oint dz/z = 1.
  cx winding = 0.0;
  for (int k = 0; k < nodes; ++k) winding += c.weight(k) / c.z[k];
  winding /= cx(0.0, 2.0 * M_PI);
  if (std::abs(winding - cx(1.0)) > 1e-12)
    throw NumericalError("contour winding quadrature check failed");
  return c;
}

ContourPipeline build_contour_table(const HermitianPair& pair,
                                    double radius_factor, int min_nodes,
                                    double radius_override) {
  if (radius_factor < 1.5)
    throw NumericalError("contour radius factor must be >= 1.5");

  ContourPipeline cp;
  cp.scan = scan_branch_points(pair);

  double radius = std::max(radius_factor * cp.scan.max_candidate_abs, 1.0);
  if (radius_override > 0.0) {
    if (radius_override < 1.05 * cp.scan.max_candidate_abs)
      throw NumericalError("requested contour radius does not enclose all "
                           "discriminant zeros");
    radius = radius_override;
  }
  cp.contour = make_contour(radius, min_nodes, cp.scan.inside);

  const double t_req =
      2.0 * radius_factor * std::max(cp.scan.max_candidate_abs, 1.0);
  const AnchorLabeling anchor =
      label_branches_at_anchor(pair, std::max(t_req, radius));
  cp.anchor_t0 = anchor.t0;

  Labeling at_radius = anchor.labeling;
  if (anchor.t0 > radius) {
    const Path down = line_path(cx(anchor.t0, 0.0), cx(radius, 0.0), 32);
    const BranchTable t = continue_branches(pair, down, anchor.labeling);
    at_radius = t.at(t.zs.size() - 1);
  }

  const Path circle = circle_path(cx(0.0, 0.0), radius, cp.contour.nodes);
  cp.table = continue_branches(pair, circle, at_radius);
  cp.table.path_description =
      "contour R=" + std::to_string(radius) + " N=" +
      std::to_string(cp.contour.nodes) + " anchored at t0=" +
      std::to_string(anchor.t0);

  if (!is_identity(contour_monodromy(pair, cp)))
    throw NumericalError("monodromy around the certified contour is not the "
                         "identity; branch continuation is inconsistent");
  return cp;
}

void refine_contour_nodes(const HermitianPair& pair, ContourPipeline& cp) {
  const int nodes = cp.contour.nodes * 2;
  cp.contour = make_contour(cp.contour.radius, nodes, cp.contour.enclosed);
  const Labeling start = cp.table.at(0);
  const Path circle = circle_path(cx(0.0, 0.0), cp.contour.radius, nodes);
  cp.table = continue_branches(pair, circle, start);
}

std::vector<int> contour_monodromy(const HermitianPair& pair,
                                   const ContourPipeline& cp) {
  const std::vector<cx>& first = cp.table.values.front();
  const std::vector<cx>& last = cp.table.values.back();
  std::vector<int> perm(first.size());
  for (std::size_t j = 0; j < last.size(); ++j) {
    double best = std::numeric_limits<double>::infinity();
    int arg = -1;
    for (std::size_t k = 0; k < first.size(); ++k) {
      const double d = std::abs(last[j] - first[k]);
      if (d < best) {
        best = d;
        arg = static_cast<int>(k);
      }
    }
    if (best > pair.tol().match * (1.0 + cp.contour.radius))
      throw CollisionGuardTripped(
          "contour table does not close onto the starting roots");
    perm[j] = arg;
  }
  return perm;
}

} // namespace bmv::spectral
