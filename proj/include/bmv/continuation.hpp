#pragma once

#include <string>
#include <vector>

#include "bmv/pair.hpp"
#include "bmv/types.hpp"

namespace bmv::spectral {

// A continuation path as an explicit list of target points; arcs are
// discretized by the makers below. Adaptive stepping subdivides between
// consecutive targets as needed, so the discretization only has to be
// topologically right.
struct Path {
  std::vector<cx> points;
  std::string description;
};

Path line_path(cx from, cx to, int segments);
// Closed, positively oriented circle starting and ending at angle `start`.
Path circle_path(cx center, double radius, int segments, double start_angle = 0.0);

// Branch values ordered by label at a single point.
struct Labeling {
  cx z;
  std::vector<cx> values; // values[j] = lambda_{j+1}(z)
};

// Labeled samples of all n branches along a path. Labels follow the
// asymptotic ordering: branch j has slope -b_j at infinity and anchor
// data (a_jj, b_j).
struct BranchTable {
  std::vector<double> anchor_a;
  std::vector<double> anchor_b;
  std::vector<cx> zs;
  std::vector<std::vector<cx>> values; // values[k][j] at zs[k]
  std::string path_description;

  Labeling at(std::size_t k) const { return {zs[k], values[k]}; }
};

// Initial labeling at a large real anchor t0: label j goes to the root
// nearest a_jj - t0 b_j. Retries with doubled t0 (up to max_retries) until
// the assignment is a bijection with pairing distance <= 1/4 of the
// minimal predicted gap. Returns the labeling and the accepted anchor.
struct AnchorLabeling {
  Labeling labeling;
  double t0 = 0.0;
};
AnchorLabeling label_branches_at_anchor(const core::HermitianPair& pair,
                                        double t0, int max_retries = 10);

// Analytic continuation of all branches along the path from the given
// initial labeling. Consecutive samples are paired by nearest match and the
// step is halved until every pairing has a 3x separation margin.
BranchTable continue_branches(const core::HermitianPair& pair, const Path& path,
                              const Labeling& init);

// Permutation induced by one positively oriented loop: perm[j] = label of
// the branch that the j-th initial value lands on after the loop.
std::vector<int> monodromy_permutation(const core::HermitianPair& pair,
                                       cx center, double radius,
                                       const Labeling& init_at_start);

bool is_identity(const std::vector<int>& perm);

} // namespace bmv::spectral
