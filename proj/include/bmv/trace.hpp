#pragma once

#include "bmv/pair.hpp"
#include "bmv/types.hpp"

namespace bmv::core {

// f(z) = Tr e^{A - z B} as the sum of e^{lambda} over the roots of the
// characteristic polynomial of A - z B.
cx trace_exp(const HermitianPair& pair, cx z);

// Real-argument wrapper: asserts the result is real (within tol.real)
// and strictly positive, both guaranteed for a Hermitian pencil.
double trace_exp_real(const HermitianPair& pair, double t);

} // namespace bmv::core
