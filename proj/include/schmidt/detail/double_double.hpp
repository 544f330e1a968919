#pragma once

#include <cmath>
#include <cstdint>

namespace schmidt::detail {

// Double-double value: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
// Gives ~31 decimal digits, enough to absorb the cancellation in the
// alternating expansion-coefficient sums up to the supported quantum numbers.
struct dd {
  double hi = 0.0;
  double lo = 0.0;
};

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

// Requires |a| >= |b| (or a == 0).
inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd dd_neg(dd x) { return {-x.hi, -x.lo}; }

inline dd dd_add(dd x, dd y) {
  dd s = two_sum(x.hi, y.hi);
  s.lo += x.lo + y.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd dd_add(dd x, double y) {
  dd s = two_sum(x.hi, y);
  s.lo += x.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd dd_mul(dd x, dd y) {
  dd p = two_prod(x.hi, y.hi);
  p.lo += x.hi * y.lo + x.lo * y.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline dd dd_mul(dd x, double y) {
  dd p = two_prod(x.hi, y);
  p.lo += x.lo * y;
  return quick_two_sum(p.hi, p.lo);
}

inline dd dd_div(dd x, dd y) {
  double q1 = x.hi / y.hi;
  dd r = dd_add(x, dd_neg(dd_mul(y, q1)));
  double q2 = r.hi / y.hi;
  r = dd_add(r, dd_neg(dd_mul(y, q2)));
  double q3 = r.hi / y.hi;
  dd q = quick_two_sum(q1, q2);
  return dd_add(q, q3);
}

inline dd dd_sqrt(dd x) {
  if (x.hi == 0.0) return {0.0, 0.0};
  double a = std::sqrt(x.hi);
  dd a2 = two_prod(a, a);
  dd diff = dd_add(x, dd_neg(a2));
  double corr = diff.hi / (2.0 * a);
  return quick_two_sum(a, corr);
}

// Exact conversion; the rounding remainder of hi always fits a double.
inline dd dd_from_u64(std::uint64_t v) {
  double hi = static_cast<double>(v);
  auto rem = static_cast<std::int64_t>(v - static_cast<std::uint64_t>(hi));
  return quick_two_sum(hi, static_cast<double>(rem));
}

inline dd dd_pow_int(dd base, int e) {
  dd result{1.0, 0.0};
  dd b = base;
  while (e > 0) {
    if (e & 1) result = dd_mul(result, b);
    b = dd_mul(b, b);
    e >>= 1;
  }
  return result;
}

inline double dd_value(dd x) { return x.hi + x.lo; }

}  // namespace schmidt::detail
