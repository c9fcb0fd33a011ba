#pragma once

#include <string>

#include "conemod/rational.hpp"

namespace conemod {

// Global comparison tolerance for algebraic-float rates.
inline constexpr double kRateTolerance = 1e-9;

// A growth/decay rate. Rationals are exact; irrational algebraic values are
// carried as doubles with an optional human-readable label ("2*sqrt(2)-3").
struct Rate {
  bool is_exact = true;
  Rational exact = 0;
  double approx = 0.0;
  std::string label;

  static Rate from_rational(Rational q) {
    Rate r;
    r.is_exact = true;
    r.approx = to_double(q);
    r.exact = std::move(q);
    return r;
  }
  static Rate from_double(double x, std::string label = {}) {
    Rate r;
    r.is_exact = false;
    r.approx = x;
    r.label = std::move(label);
    return r;
  }

  double x() const { return approx; }
};

// Exact equality when both sides are rational, tolerance comparison otherwise.
inline bool rate_equal(const Rate& a, const Rate& b, double tol = kRateTolerance) {
  if (a.is_exact && b.is_exact) return a.exact == b.exact;
  double d = a.approx - b.approx;
  return (d < 0 ? -d : d) < tol;
}

// Equal in the sense that membership at an interval endpoint is unambiguous:
// exact==exact comparison, or bitwise-equal approximations.
inline bool rate_identical(const Rate& a, const Rate& b) {
  if (a.is_exact && b.is_exact) return a.exact == b.exact;
  return a.approx == b.approx;
}

inline bool rate_less(const Rate& a, const Rate& b) {
  if (a.is_exact && b.is_exact) return a.exact < b.exact;
  return a.approx < b.approx;
}

std::string format_rate(const Rate& r);

// Accepts whatever parse_rational accepts, falling back to a float literal.
Rate parse_rate(const std::string& text);

// Open interval of rates.
struct Window {
  Rate lo;
  Rate hi;

  bool strictly_inside(const Rate& r) const { return rate_less(lo, r) && rate_less(r, hi); }
};

Window make_window(Rate lo, Rate hi);  // validates lo < hi, both finite

}  // namespace conemod
