// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>

namespace amgm {

// A real number extended with +infinity, carried as an explicit flag so that
// convention branches (e.g. F = +inf) are exact case splits instead of
// comparisons against a sentinel float.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double value) : value_(value) {}  // NOLINT: implicit by design

  static constexpr ExtendedReal infinity() {
    ExtendedReal r;
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_infinite() const { return infinite_; }

  // The finite payload; meaningful only when !is_infinite().
  constexpr double finite_value() const { return value_; }

  // Collapse to a double for display purposes only.
  constexpr double as_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr bool operator==(ExtendedReal a, ExtendedReal b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ && b.infinite_;
    return a.value_ == b.value_;
  }
  friend constexpr bool operator!=(ExtendedReal a, ExtendedReal b) { return !(a == b); }
  friend constexpr bool operator<(ExtendedReal a, ExtendedReal b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend constexpr bool operator>(ExtendedReal a, ExtendedReal b) { return b < a; }
  friend constexpr bool operator<=(ExtendedReal a, ExtendedReal b) { return !(b < a); }
  friend constexpr bool operator>=(ExtendedReal a, ExtendedReal b) { return !(a < b); }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

}  // namespace amgm
