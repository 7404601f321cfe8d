#pragma once

#include <cmath>

#include "bmv/types.hpp"

namespace bmv {

// Kahan compensated accumulator.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

struct KahanComplex {
  KahanSum re, im;
  void add(cx x) {
    re.add(x.real());
    im.add(x.imag());
  }
  cx value() const { return {re.value(), im.value()}; }
};

// Double-double accumulator: unevaluated hi+lo sum, ~32 significant digits
// for the accumulation itself (term evaluation stays in double).
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  void add(double x) {
    double s = hi + x;
    const double bb = s - hi;
    const double err = (hi - (s - bb)) + (x - bb);
    const double lo2 = lo + err;
    hi = s + lo2;
    lo = lo2 - (hi - s);
  }
  double value() const { return hi; }
};

struct DoubleDoubleComplex {
  DoubleDouble re, im;
  void add(cx x) {
    re.add(x.real());
    im.add(x.imag());
  }
  cx value() const { return {re.value(), im.value()}; }
};

} // namespace bmv
