#include "bmv/trace.hpp"

#include <cmath>

#include "bmv/accum.hpp"
#include "bmv/charpoly.hpp"
#include "bmv/errors.hpp"
#include "bmv/roots.hpp"

namespace bmv::core {

cx trace_exp(const HermitianPair& pair, cx z) {
  if (z.imag() == 0.0) {
    // A - t B is Hermitian for real t; the Jacobi eigenvalues stay accurate
    // even where branches cross, which the root finder cannot guarantee.
    CMat m = pair.a();
    for (int i = 0; i < pair.n(); ++i) m(i, i) -= z.real() * pair.b()[i];
    const JacobiResult eig =
        jacobi_hermitian(m, 1e-14 * (m.frob_norm() + 1e-300));
    KahanSum sum;
    for (double lam : eig.eigenvalues) sum.add(std::exp(lam));
    return {sum.value(), 0.0};
  }

  const PolyCoeffs p = char_poly_at(pair, z);
  KahanComplex sum;
  for (const cx& lam : poly_roots(p, pair.tol().root)) sum.add(std::exp(lam));
  return sum.value();
}

double trace_exp_real(const HermitianPair& pair, double t) {
  const cx v = trace_exp(pair, cx(t, 0.0));
  if (std::abs(v.imag()) > pair.tol().real * (1.0 + std::abs(v.real())))
    throw NumericalError("trace of exponential not real at real argument");
  if (v.real() <= 0.0)
    throw NumericalError("trace of exponential not positive at real argument");
  return v.real();
}

} // namespace bmv::core
