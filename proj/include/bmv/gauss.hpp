#pragma once

#include <vector>

namespace bmv {

struct GaussRule {
  std::vector<double> nodes;   // on (-1, 1), ascending
  std::vector<double> weights; // positive, sum to 2
};

// Gauss-Legendre rule with m points (Newton on Legendre polynomials).
GaussRule gauss_legendre(int m);

} // namespace bmv
