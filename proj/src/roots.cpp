#include "bmv/roots.hpp"

#include <algorithm>
#include <cmath>

#include "bmv/errors.hpp"

namespace bmv::core {

namespace {

double root_radius_bound(const PolyCoeffs& p) {
  // Fujiwara-style bound for a monic polynomial.
  const int n = p.degree();
  double r = 0.0;
  for (int k = 0; k < n; ++k) {
    const double a = std::abs(p.c[k]);
    if (a == 0.0) continue;
    r = std::max(r, std::pow(2.0 * a, 1.0 / (n - k)));
  }
  return std::max(r, 1e-3);
}

bool residual_ok(const PolyCoeffs& p, const std::vector<cx>& x, double tol,
                 double slack, double* worst = nullptr) {
  bool ok = true;
  double w = 0.0;
  for (const cx& xi : x) {
    const double res = std::abs(poly_eval(p, xi));
    const double scale = std::pow(1.0 + std::abs(xi), p.degree());
    w = std::max(w, res / scale);
    if (res > slack * tol * scale) ok = false;
  }
  if (worst) *worst = w;
  return ok;
}

} // namespace

std::vector<cx> poly_roots(const PolyCoeffs& p, double tol_root, int max_iter) {
  const int n = p.degree();
  if (n < 1) return {};
  if (std::abs(p.c[n] - cx(1.0)) > 1e-12)
    throw NumericalError("poly_roots requires a monic polynomial");
  if (n == 1) return {-p.c[0]};

  const cx center = -p.c[n - 1] / static_cast<double>(n);
  const double radius = std::max(0.5 * root_radius_bound(p), 1e-3);

  std::vector<cx> x(n);
  for (int i = 0; i < n; ++i) {
    const double ang = 2.0 * M_PI * i / n + 0.4;
    // slight radial spread breaks symmetric stalls
    x[i] = center + radius * (1.0 + 0.05 * i / n) * std::polar(1.0, ang);
  }

  int iter = 0;
  for (; iter < max_iter; ++iter) {
    double max_step = 0.0;
    for (int i = 0; i < n; ++i) {
      cx pv, pd;
      poly_eval_with_derivative(p, x[i], pv, pd);
      if (pv == cx{}) continue;
      if (pd == cx{}) { // exactly at a critical point: nudge
        x[i] += 1e-8 * (1.0 + std::abs(x[i]));
        max_step = 1e300;
        continue;
      }
      const cx newton = pv / pd;
      cx sum = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        cx diff = x[i] - x[j];
        if (diff == cx{}) diff = 1e-14 * (1.0 + std::abs(x[i]));
        sum += 1.0 / diff;
      }
      const cx denom = 1.0 - newton * sum;
      const cx step = (denom == cx{}) ? newton : newton / denom;
      x[i] -= step;
      max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(x[i])));
    }
    if (max_step < 1e-15) break;
    if (residual_ok(p, x, tol_root, 0.25)) break;
  }

  // One Newton polish per root, kept only when it improves the residual.
  for (int i = 0; i < n; ++i) {
    cx pv, pd;
    poly_eval_with_derivative(p, x[i], pv, pd);
    if (pd == cx{}) continue;
    const cx cand = x[i] - pv / pd;
    if (std::abs(poly_eval(p, cand)) < std::abs(pv)) x[i] = cand;
  }

  double worst = 0.0;
  if (!residual_ok(p, x, tol_root, 1.0, &worst))
    throw NoConvergence("Aberth root finder", iter, worst);
  return x;
}

} // namespace bmv::core
