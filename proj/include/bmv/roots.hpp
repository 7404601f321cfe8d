#pragma once

#include <vector>

#include "bmv/charpoly.hpp"
#include "bmv/types.hpp"

namespace bmv::core {

// All complex roots of a monic polynomial (multiset, no ordering contract),
// by Aberth-Ehrlich simultaneous iteration from a perturbed circle, plus a
// final Newton polish. Every returned root satisfies
//   |p(root)| <= tol_root * (1 + |root|)^degree.
std::vector<cx> poly_roots(const PolyCoeffs& p, double tol_root = 1e-10,
                           int max_iter = 400);

} // namespace bmv::core
