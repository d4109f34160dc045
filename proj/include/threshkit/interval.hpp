#pragma once

#include <string>

#include "threshkit/rational.hpp"

namespace threshkit {

/// Closed rational interval [lo, hi]. Transcendental functions return
/// enclosures whose endpoints are dyadic rationals rounded outward, so the
/// true value always lies inside.
struct Interval {
  Rational lo = 0;
  Rational hi = 0;

  Interval() = default;
  Interval(Rational l, Rational h);
  static Interval point(const Rational& x) { return Interval(x, x); }

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool is_point() const { return lo == hi; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Rational& c);
/// a^k for integer k; a must be nonnegative.
Interval pow(const Interval& a, unsigned k);

std::string to_string(const Interval& x);

/// Enclosures of exp and ln, each endpoint accurate to about 2^-bits
/// relative to its magnitude.
Interval exp(const Interval& x, unsigned bits = 64);
/// Requires x.lo > 0.
Interval ln(const Interval& x, unsigned bits = 64);
/// log base 2 of a positive rational.
Interval log2(const Rational& x, unsigned bits = 64);
/// base^exponent for base >= 0 and exponent > 0 (0^e = 0).
Interval pow(const Interval& base, const Interval& exponent, unsigned bits = 64);

/// Bits of precision appropriate for comparisons at the given width.
unsigned precision_for(const Rational& width);

}  // namespace threshkit
