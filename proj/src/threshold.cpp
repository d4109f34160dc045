#include "threshkit/threshold.hpp"

#include "threshkit/error.hpp"

namespace threshkit {

std::string_view to_string(QuantityKind kind) {
  switch (kind) {
    case QuantityKind::PC: return "p_c";
    case QuantityKind::QC: return "q_c";
    case QuantityKind::QF: return "q_f";
  }
  return "?";
}

Rational default_width() { return Rational(1) / pow(Rational(2), 20); }

Enclosure bisect_crossing(QuantityKind kind, const Rational& width,
                          const std::function<int(const Rational&)>& side) {
  if (width <= 0) throw Error(ErrorKind::InvalidArgument, "enclosure width must be positive");
  Enclosure e{Rational(0), Rational(1), kind};
  while (e.hi - e.lo > width) {
    Rational mid = (e.lo + e.hi) / 2;
    int s = side(mid);
    if (s == 0) {
      e.lo = e.hi = mid;
      return e;
    }
    (s < 0 ? e.lo : e.hi) = mid;
  }
  Rational r = simplest_between(e.lo, e.hi);
  if (r != e.lo && r != e.hi && side(r) == 0) e.lo = e.hi = r;
  return e;
}

Polynomial membership_polynomial(const Family& family, CountStrategy strategy) {
  const auto profile = size_profile(family, strategy);
  const std::size_t n = family.ground().size();
  // (1-p)^(n-j) expanded by the binomial theorem
  std::vector<Rational> coeffs(n + 1, Rational(0));
  for (std::size_t j = 0; j <= n; ++j) {
    if (profile[j] == 0) continue;
    for (std::size_t i = 0; i + j <= n; ++i) {
      Integer binom;
      mpz_bin_uiui(binom.get_mpz_t(), n - j, i);
      Integer term = profile[j] * binom;
      if (i % 2 == 1) term = -term;
      coeffs[i + j] += Rational(term);
    }
  }
  return Polynomial(std::move(coeffs));
}

Rational prob_in_family(const Family& family, const Rational& p, CountStrategy strategy) {
  if (p < 0 || p > 1) throw Error(ErrorKind::InvalidProbability, "p = " + to_string(p) + " is outside [0, 1]");
  const auto profile = size_profile(family, strategy);
  const std::size_t n = family.ground().size();
  const Rational r = 1 - p;
  Rational total = 0;
  for (std::size_t j = 0; j <= n; ++j) {
    if (profile[j] == 0) continue;
    total += Rational(profile[j]) * pow(p, static_cast<unsigned>(j)) * pow(r, static_cast<unsigned>(n - j));
  }
  return total;
}

Enclosure p_c(const Family& family, const Rational& width) {
  const Polynomial poly = membership_polynomial(family);
  const Rational half(1, 2);
  return bisect_crossing(QuantityKind::PC, width, [&](const Rational& p) { return sgn(poly(p) - half); });
}

}  // namespace threshkit
