#pragma once

#include <cmath>
#include <limits>

#include "divprod/bigcount.hpp"

namespace divprod {

// A positive real held by its natural logarithm. Zero is -inf.
struct LogValue {
  double magnitude = 0.0;

  static LogValue zero() { return {-std::numeric_limits<double>::infinity()}; }
  static LogValue one() { return {0.0}; }
  static LogValue of(double value) { return {std::log(value)}; }
  static LogValue of(const BigCount& value) { return {value.log()}; }

  bool is_zero() const { return std::isinf(magnitude) && magnitude < 0; }

  // Multiplication of values.
  LogValue& operator*=(LogValue o) { magnitude += o.magnitude; return *this; }
  friend LogValue operator*(LogValue a, LogValue b) { return a *= b; }
  friend auto operator<=>(const LogValue&, const LogValue&) = default;
};

}  // namespace divprod
