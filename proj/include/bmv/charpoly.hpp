#pragma once

#include <vector>

#include "bmv/pair.hpp"
#include "bmv/types.hpp"

namespace bmv::core {

// Monic polynomial; c[k] is the coefficient of lambda^k, c[degree] == 1.
struct PolyCoeffs {
  std::vector<cx> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
};

cx poly_eval(const PolyCoeffs& p, cx x);

// Evaluates p and p' in one Horner pass.
void poly_eval_with_derivative(const PolyCoeffs& p, cx x, cx& value, cx& deriv);

// Coefficients of det(lambda*id - (A - z B)) by the Faddeev-LeVerrier
// recurrence on M = A - z B. For real z the coefficients are real up to
// tol.real (Hermitian pencil); violation means a bug upstream.
PolyCoeffs char_poly_at(const HermitianPair& pair, cx z);

} // namespace bmv::core
