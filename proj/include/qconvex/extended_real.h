#ifndef QCONVEX_EXTENDED_REAL_H_
#define QCONVEX_EXTENDED_REAL_H_

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace qconvex {

// A nonnegative real number or +infinity. Radius bounds and pseudo-resolvent
// norms are genuinely infinite for some directions (e.g. linear maps), and
// that case must never be confused with a large finite value.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr explicit ExtendedReal(double value) : value_(value) {}

  static constexpr ExtendedReal Infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity());
  }

  bool is_finite() const { return std::isfinite(value_); }
  bool is_infinite() const { return std::isinf(value_); }

  // +inf is returned as IEEE infinity; callers that need a finite number
  // must check is_finite() first.
  double value() const { return value_; }

  ExtendedReal Sqrt() const {
    return is_infinite() ? Infinity() : ExtendedReal(std::sqrt(value_));
  }

  // "inf" or the value at 17 significant digits.
  std::string ToString() const {
    if (is_infinite()) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value_);
    return buf;
  }

  friend bool operator==(ExtendedReal a, ExtendedReal b) {
    return a.value_ == b.value_;
  }
  friend bool operator<(ExtendedReal a, ExtendedReal b) {
    return a.value_ < b.value_;
  }
  friend bool operator<=(ExtendedReal a, ExtendedReal b) {
    return a.value_ <= b.value_;
  }
  friend bool operator>(ExtendedReal a, ExtendedReal b) { return b < a; }
  friend bool operator>=(ExtendedReal a, ExtendedReal b) { return b <= a; }

 private:
  double value_ = 0.0;
};

}  // namespace qconvex

#endif  // QCONVEX_EXTENDED_REAL_H_
