#pragma once

#include <cstdint>
#include <random>

#include "bmv/types.hpp"

namespace bmv {

// Deterministic uniform doubles straight from the (standardized) mt19937_64
// stream; no std distributions, whose outputs vary across libraries.
class DetRng {
public:
  explicit DetRng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  cx complex_in_square(double half_width) {
    // fixed evaluation order; uniform() calls in an expression would not be
    const double re = uniform(-half_width, half_width);
    const double im = uniform(-half_width, half_width);
    return {re, im};
  }

private:
  std::mt19937_64 eng_;
};

struct Instance {
  CMat a;
  CMat b;
};

struct GenSpec {
  int n = 2;
  std::uint64_t seed = 0;
  bool commuting = false;
  bool diag_b = true;      // diagonal B with controlled gaps vs dense G G^dagger
  double a_scale = 0.5;    // half-width of the A entry distribution
  double b_min_lo = 0.5;   // b_1 drawn from [b_min_lo, b_min_hi]
  double b_min_hi = 1.0;
  double gap_lo = 0.3;     // consecutive b gaps drawn from [gap_lo, gap_hi]
  double gap_hi = 0.5;
};

// Random Hermitian A; B either diagonal with the requested gaps or dense
// PSD via G G^dagger. With `commuting`, both matrices are built from one
// random unitary and random spectra.
Instance gen_instance(const GenSpec& spec);

} // namespace bmv
