#pragma once

#include <cmath>

namespace schmidt::detail {

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double term) {
    double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }

  double value() const { return sum + comp; }
};

}  // namespace schmidt::detail
