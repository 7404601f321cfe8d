#include "bmv/instance_gen.hpp"

#include <cmath>

#include "bmv/errors.hpp"

namespace bmv {

namespace {

CMat random_hermitian(DetRng& rng, int n, double scale) {
  CMat a(n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = rng.uniform(-scale, scale);
    for (int j = i + 1; j < n; ++j) {
      const cx v = rng.complex_in_square(0.7 * scale);
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  return a;
}

std::vector<double> random_ascending(DetRng& rng, int n, double lo_min,
                                     double lo_max, double gap_lo,
                                     double gap_hi) {
  std::vector<double> b(n);
  b[0] = rng.uniform(lo_min, lo_max);
  for (int j = 1; j < n; ++j) b[j] = b[j - 1] + rng.uniform(gap_lo, gap_hi);
  return b;
}

// Gram-Schmidt on a random complex matrix.
CMat random_unitary(DetRng& rng, int n) {
  CMat q(n);
  for (int col = 0; col < n; ++col) {
    std::vector<cx> v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.complex_in_square(1.0);
    for (int prev = 0; prev < col; ++prev) {
      cx proj = 0.0;
      for (int i = 0; i < n; ++i) proj += std::conj(q(i, prev)) * v[i];
      for (int i = 0; i < n; ++i) v[i] -= proj * q(i, prev);
    }
    double norm = 0.0;
    for (const cx& x : v) norm += std::norm(x);
    norm = std::sqrt(norm);
    if (norm < 1e-8) throw NumericalError("random unitary draw degenerated");
    for (int i = 0; i < n; ++i) q(i, col) = v[i] / norm;
  }
  return q;
}

CMat diag(const std::vector<double>& d) {
  CMat m(static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i)
    m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

CMat hermitize(const CMat& m) { return cx(0.5) * (m + m.dagger()); }

} // namespace

Instance gen_instance(const GenSpec& spec) {
  if (spec.n < 1) throw ParseError("instance size must be >= 1");
  DetRng rng(spec.seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);

  if (spec.commuting) {
    const CMat q = random_unitary(rng, spec.n);
    std::vector<double> eigs_a(spec.n);
    for (double& v : eigs_a) v = rng.uniform(-spec.a_scale, spec.a_scale);
    const std::vector<double> eigs_b =
        random_ascending(rng, spec.n, spec.b_min_lo, spec.b_min_hi,
                         spec.gap_lo, spec.gap_hi);
    Instance inst;
    inst.a = hermitize(q * diag(eigs_a) * q.dagger());
    inst.b = hermitize(q * diag(eigs_b) * q.dagger());
    return inst;
  }

  Instance inst;
  inst.a = random_hermitian(rng, spec.n, spec.a_scale);
  if (spec.diag_b) {
    inst.b = diag(random_ascending(rng, spec.n, spec.b_min_lo, spec.b_min_hi,
                                   spec.gap_lo, spec.gap_hi));
  } else {
    CMat g(spec.n);
    for (int i = 0; i < spec.n; ++i)
      for (int j = 0; j < spec.n; ++j) g(i, j) = rng.complex_in_square(1.0);
    inst.b = hermitize(cx(1.0 / spec.n) * (g * g.dagger()));
  }
  return inst;
}

} // namespace bmv
