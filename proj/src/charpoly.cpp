#include "bmv/charpoly.hpp"

#include <cmath>

#include "bmv/errors.hpp"

namespace bmv::core {

cx poly_eval(const PolyCoeffs& p, cx x) {
  cx v = 0.0;
  for (int k = p.degree(); k >= 0; --k) v = v * x + p.c[k];
  return v;
}

void poly_eval_with_derivative(const PolyCoeffs& p, cx x, cx& value, cx& deriv) {
  cx v = 0.0, d = 0.0;
  for (int k = p.degree(); k >= 0; --k) {
    d = d * x + v;
    v = v * x + p.c[k];
  }
  value = v;
  deriv = d;
}

PolyCoeffs char_poly_at(const HermitianPair& pair, cx z) {
  const int n = pair.n();
  CMat m = pair.a();
  for (int i = 0; i < n; ++i) m(i, i) -= z * pair.b()[i];

  PolyCoeffs p;
  p.c.assign(n + 1, cx{});
  p.c[n] = 1.0;

  // M_1 = M, c_{n-k} = -tr(M_k)/k, M_{k+1} = M (M_k + c_{n-k} id).
  CMat mk = m;
  for (int k = 1; k <= n; ++k) {
    p.c[n - k] = -mk.trace() / static_cast<double>(k);
    if (k < n) {
      CMat shifted = mk;
      for (int i = 0; i < n; ++i) shifted(i, i) += p.c[n - k];
      mk = m * shifted;
    }
  }

  if (z.imag() == 0.0) {
    for (int k = 0; k <= n; ++k) {
      if (std::abs(p.c[k].imag()) >
          pair.tol().real * (1.0 + std::abs(p.c[k])))
        throw NumericalError(
            "characteristic polynomial at real z has complex coefficient");
      p.c[k] = cx(p.c[k].real(), 0.0);
    }
  }
  return p;
}

} // namespace bmv::core
