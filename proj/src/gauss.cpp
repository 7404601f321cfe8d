#include "bmv/gauss.hpp"

#include <cmath>

#include "bmv/errors.hpp"

namespace bmv {

GaussRule gauss_legendre(int m) {
  if (m < 1) throw NumericalError("Gauss-Legendre rule needs m >= 1");
  GaussRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);

  for (int i = 0; i < (m + 1) / 2; ++i) {
    // Chebyshev-based initial guess for the i-th root of P_m.
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence for P_m(x) and P'_m(x).
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x; // cos ordering gives descending roots
    rule.nodes[m - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  if (m % 2 == 1) { // middle node is exactly 0
    rule.nodes[m / 2] = 0.0;
  }
  return rule;
}

} // namespace bmv
