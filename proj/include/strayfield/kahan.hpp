#pragma once

namespace strayfield {

/// Kahan compensated accumulator. Summation order is whatever the caller
/// makes it; keep that order fixed when reproducibility matters.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double value) {
    const double y = value - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }

  KahanSum& operator+=(double value) {
    add(value);
    return *this;
  }

  double value() const { return sum; }
};

}  // namespace strayfield
