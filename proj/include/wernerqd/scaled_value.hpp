#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace wernerqd {

/// mantissa * 2^exponent, so quantities like (1-p)/2^n stay representable for n in the thousands.
struct ScaledValue {
  double mantissa = 0.0;
  int exponent = 0;

  static ScaledValue of(double v) { return ScaledValue{v, 0}.normalized(); }

  /// v * 2^k
  static ScaledValue pow2_scaled(double v, int k) { return ScaledValue{v, k}.normalized(); }

  /// Mantissa brought to [0.5, 1) in magnitude; zero maps to {0, 0}.
  ScaledValue normalized() const {
    if (mantissa == 0.0) return {0.0, 0};
    if (!std::isfinite(mantissa)) return *this;
    int e = 0;
    const double m = std::frexp(mantissa, &e);
    return {m, exponent + e};
  }

  double to_double() const { return std::ldexp(mantissa, exponent); }

  bool is_zero() const { return mantissa == 0.0; }
  bool is_negative() const { return mantissa < 0.0; }

  /// log2 |value|; -inf for zero.
  double log2_abs() const {
    if (mantissa == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log2(std::abs(mantissa)) + exponent;
  }

  ScaledValue operator-() const { return {-mantissa, exponent}; }

  friend ScaledValue operator+(ScaledValue a, ScaledValue b) {
    a = a.normalized();
    b = b.normalized();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int top = std::max(a.exponent, b.exponent);
    const double m = std::ldexp(a.mantissa, a.exponent - top) + std::ldexp(b.mantissa, b.exponent - top);
    return ScaledValue{m, top}.normalized();
  }
  friend ScaledValue operator-(ScaledValue a, ScaledValue b) { return a + (-b); }

  friend bool operator==(const ScaledValue& a, const ScaledValue& b) {
    const ScaledValue l = a.normalized(), r = b.normalized();
    return l.mantissa == r.mantissa && (l.mantissa == 0.0 || l.exponent == r.exponent);
  }
  friend bool operator<(const ScaledValue& a, const ScaledValue& b) {
    return (b - a).mantissa > 0.0;
  }
};

}  // namespace wernerqd
