#pragma once

#include <functional>
#include <string_view>

#include "threshkit/polynomial.hpp"
#include "threshkit/rational.hpp"
#include "threshkit/set_system.hpp"

namespace threshkit {

enum class QuantityKind { PC, QC, QF };

std::string_view to_string(QuantityKind kind);

/// Exact rational interval [lo, hi] known to contain the target quantity.
struct Enclosure {
  Rational lo = 0;
  Rational hi = 1;
  QuantityKind kind = QuantityKind::PC;

  bool is_point() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// 2^-20.
Rational default_width();

/// Locates the crossing of a strictly increasing function f on [0, 1] with
/// f(0) < 1/2 < f(1). `side(x)` returns the sign of f(x) - 1/2. Bisection
/// stops once hi - lo <= width, then the simplest rational inside the
/// bracket is tried as an exact crossing. Whenever side returns 0 the
/// enclosure collapses to that point.
Enclosure bisect_crossing(QuantityKind kind, const Rational& width, const std::function<int(const Rational&)>& side);

/// Coefficients (in p) of P(X_p in F) = sum_j N_j p^j (1-p)^(n-j).
Polynomial membership_polynomial(const Family& family, CountStrategy strategy = CountStrategy::Auto);

/// Exact P(X_p in F). Throws InvalidProbability outside [0, 1] and
/// CapExceeded when neither evaluation route fits the cap.
Rational prob_in_family(const Family& family, const Rational& p, CountStrategy strategy = CountStrategy::Auto);

/// Enclosure of the unique p with P(X_p in F) = 1/2.
Enclosure p_c(const Family& family, const Rational& width = default_width());

}  // namespace threshkit
