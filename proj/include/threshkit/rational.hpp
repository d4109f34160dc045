#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace threshkit {

/// Exact rationals in canonical form (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// num/den, canonicalized. Throws InvalidArgument on a zero denominator.
Rational make_rational(long num, long den = 1);

Rational pow(const Rational& base, unsigned exponent);
Integer pow(const Integer& base, unsigned exponent);

/// "num/den", or just "num" when the denominator is one.
std::string to_string(const Rational& r);

/// Accepts "a", "a/b", or a finite decimal such as "0.25" (converted exactly).
Rational parse_rational(std::string_view text);

/// Decimal rendering with `digits` significant digits. Presentation only.
std::string to_decimal(const Rational& r, int digits = 6);

/// The rational with the smallest denominator in the closed interval [lo, hi]
/// (ties broken by smallest numerator). Requires 0 <= lo <= hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

/// floor(r * 2^shift) as an unsigned 128-bit integer; r must be in [0, 2^(127-shift)).
unsigned __int128 floor_scaled(const Rational& r, unsigned shift);

}  // namespace threshkit
