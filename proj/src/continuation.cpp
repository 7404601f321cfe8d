#include "bmv/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bmv/charpoly.hpp"
#include "bmv/errors.hpp"
#include "bmv/roots.hpp"

namespace bmv::spectral {

using core::char_poly_at;
using core::HermitianPair;
using core::poly_roots;

Path line_path(cx from, cx to, int segments) {
  Path p;
  p.description = "line";
  for (int k = 0; k <= segments; ++k)
    p.points.push_back(from + (to - from) * (static_cast<double>(k) / segments));
  return p;
}

Path circle_path(cx center, double radius, int segments, double start_angle) {
  Path p;
  p.description = "circle r=" + std::to_string(radius);
  for (int k = 0; k <= segments; ++k)
    p.points.push_back(center +
                       radius * std::polar(1.0, start_angle +
                                                    2.0 * M_PI * k / segments));
  p.points.back() = p.points.front(); // close exactly
  return p;
}

namespace {

// Nearest-match pairing of previous branch values onto fresh roots.
// Trustworthy only when injective and every choice beats the runner-up by
// the margin factor; callers halve the step otherwise.
bool pair_nearest(const std::vector<cx>& prev, const std::vector<cx>& roots,
                  double margin_factor, std::vector<cx>* out,
                  std::vector<int>* indices = nullptr) {
  const std::size_t n = prev.size();
  std::vector<int> choice(n, -1);
  for (std::size_t j = 0; j < n; ++j) {
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = d1;
    int best = -1;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      const double d = std::abs(prev[j] - roots[k]);
      if (d < d1) {
        d2 = d1;
        d1 = d;
        best = static_cast<int>(k);
      } else if (d < d2) {
        d2 = d;
      }
    }
    if (best < 0 || d2 < margin_factor * d1) return false;
    choice[j] = best;
  }
  std::vector<bool> taken(roots.size(), false);
  for (std::size_t j = 0; j < n; ++j) {
    if (taken[choice[j]]) return false;
    taken[choice[j]] = true;
  }
  if (out) {
    out->resize(n);
    for (std::size_t j = 0; j < n; ++j) (*out)[j] = roots[choice[j]];
  }
  if (indices) *indices = choice;
  return true;
}

std::vector<cx> roots_at(const HermitianPair& pair, cx z) {
  return poly_roots(char_poly_at(pair, z), pair.tol().root);
}

// One adaptive hop: bisect until the pairing is unambiguous.
std::vector<cx> hop(const HermitianPair& pair, cx z_from,
                    const std::vector<cx>& vals_from, cx z_to, int depth) {
  const std::vector<cx> roots = roots_at(pair, z_to);
  std::vector<cx> matched;
  if (pair_nearest(vals_from, roots, 3.0, &matched)) return matched;
  if (depth >= 48)
    throw CollisionGuardTripped(
        "branch continuation could not separate branches near z=(" +
        std::to_string(z_to.real()) + "," + std::to_string(z_to.imag()) + ")");
  const cx mid = 0.5 * (z_from + z_to);
  const std::vector<cx> vals_mid = hop(pair, z_from, vals_from, mid, depth + 1);
  return hop(pair, mid, vals_mid, z_to, depth + 1);
}

} // namespace

AnchorLabeling label_branches_at_anchor(const HermitianPair& pair, double t0,
                                        int max_retries) {
  const int n = pair.n();
  double t = t0;
  double last_margin = 0.0;
  for (int attempt = 0; attempt <= max_retries; ++attempt, t *= 2.0) {
    std::vector<cx> predicted(n);
    for (int j = 0; j < n; ++j)
      predicted[j] = cx(pair.a_diag()[j] - t * pair.b()[j], 0.0);

    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        min_gap = std::min(min_gap, std::abs(predicted[i] - predicted[j]));
    if (n == 1) min_gap = 1.0 + std::abs(predicted[0]);

    const std::vector<cx> roots = roots_at(pair, cx(t, 0.0));
    std::vector<int> choice;
    std::vector<cx> matched;
    if (!pair_nearest(predicted, roots, 1.0, &matched, &choice)) continue;

    double worst = 0.0;
    for (int j = 0; j < n; ++j)
      worst = std::max(worst, std::abs(predicted[j] - matched[j]));
    last_margin = worst / min_gap;
    if (worst <= 0.25 * min_gap)
      return {Labeling{cx(t, 0.0), matched}, t};
  }
  throw LabelAmbiguity(t, last_margin);
}

BranchTable continue_branches(const HermitianPair& pair, const Path& path,
                              const Labeling& init) {
  if (path.points.empty())
    throw NumericalError("continuation path has no points");
  if (std::abs(path.points.front() - init.z) >
      pair.tol().match * (1.0 + std::abs(init.z)))
    throw NumericalError("continuation initial labeling is not at path start");

  BranchTable table;
  table.anchor_a = pair.a_diag();
  table.anchor_b = pair.b();
  table.path_description = path.description;

  // Re-match the initial values onto fresh roots so the table rows are
  // always exact root multisets.
  std::vector<cx> current;
  if (!pair_nearest(init.values, roots_at(pair, init.z), 1.0, &current))
    throw CollisionGuardTripped("initial labeling does not match the roots at "
                                "the path start");

  table.zs.push_back(path.points.front());
  table.values.push_back(current);

  for (std::size_t k = 1; k < path.points.size(); ++k) {
    current = hop(pair, path.points[k - 1], current, path.points[k], 0);
    table.zs.push_back(path.points[k]);
    table.values.push_back(current);
  }
  return table;
}

std::vector<int> monodromy_permutation(const HermitianPair& pair, cx center,
                                       double radius,
                                       const Labeling& init_at_start) {
  const Path loop = circle_path(center, radius, 64);
  if (std::abs(loop.points.front() - init_at_start.z) >
      pair.tol().match * (1.0 + std::abs(init_at_start.z)))
    throw NumericalError("monodromy initial labeling must sit at angle 0 of "
                         "the loop");
  const BranchTable table = continue_branches(pair, loop, init_at_start);

  const std::vector<cx>& final_vals = table.values.back();
  std::vector<int> perm;
  if (!pair_nearest(final_vals, init_at_start.values, 3.0, nullptr, &perm))
    throw CollisionGuardTripped(
        "monodromy loop closure is ambiguous; branches too close at start");
  return perm;
}

bool is_identity(const std::vector<int>& perm) {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return true;
}

} // namespace bmv::spectral
