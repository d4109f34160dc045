#include "threshkit/interval.hpp"

#include <algorithm>

#include "threshkit/error.hpp"

namespace threshkit {

namespace {

Rational round_down(const Rational& r, unsigned prec) {
  Integer scaled = r.get_num() << prec;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), r.get_den_mpz_t());
  Rational out(q, Integer(1) << prec);
  out.canonicalize();
  return out;
}

Rational round_up(const Rational& r, unsigned prec) {
  Integer scaled = r.get_num() << prec;
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), r.get_den_mpz_t());
  Rational out(q, Integer(1) << prec);
  out.canonicalize();
  return out;
}

Rational abs_r(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// exp at a single rational.
Interval exp_point(const Rational& x, unsigned bits) {
  if (abs_r(x) > Rational(1 << 20)) throw Error(ErrorKind::InvalidArgument, "exp argument too large");
  if (x == 0) return Interval::point(1);
  unsigned s = 0;
  Rational y = x;
  const Rational half(1, 2);
  while (abs_r(y) > half) {
    y /= 2;
    ++s;
  }
  const unsigned prec = bits + s + 8;
  const Rational tiny = Rational(1) / pow(Rational(2), prec);
  Rational term = 1, sum = 0;
  unsigned i = 0;
  for (;;) {
    sum += term;
    ++i;
    term = term * y / i;
    if (abs_r(term) <= tiny) break;
  }
  // |tail| <= |y|^i/i! * sum_j (1/2)^j
  const Rational tail = 2 * abs_r(term);
  Rational lo = round_down(sum - tail, prec);
  Rational hi = round_up(sum + tail, prec);
  for (unsigned j = 0; j < s; ++j) {
    lo = round_down(lo * lo, prec);
    hi = round_up(hi * hi, prec);
  }
  return {std::max(lo, Rational(0)), hi};
}

// 2 atanh(z) for 0 <= z <= 1/3 = ln((1+z)/(1-z)).
Interval two_atanh(const Rational& z, unsigned prec) {
  if (z == 0) return Interval::point(0);
  const Rational z2 = z * z;
  const Rational tiny = Rational(1) / pow(Rational(2), prec);
  Rational power = z, sum = 0;
  unsigned k = 1;
  while (power / k > tiny) {
    sum += power / k;
    power *= z2;
    k += 2;
  }
  // tail <= z^k / (k (1 - z^2))
  const Rational tail = power / (k * (1 - z2));
  return {round_down(2 * sum, prec), round_up(2 * (sum + tail), prec)};
}

Interval ln_point(const Rational& x, unsigned bits) {
  if (x <= 0) throw Error(ErrorKind::InvalidArgument, "ln of a non-positive number");
  if (x == 1) return Interval::point(0);
  long e = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) - static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
  auto scaled = [&](long ex) {
    Rational m = x;
    if (ex > 0) m /= pow(Rational(2), static_cast<unsigned>(ex));
    else if (ex < 0) m *= pow(Rational(2), static_cast<unsigned>(-ex));
    return m;
  };
  Rational m = scaled(e);
  while (m < 1) m = scaled(--e);
  while (m >= 2) m = scaled(++e);
  const unsigned prec = bits + 8 + static_cast<unsigned>(mpz_sizeinbase(Integer(std::abs(e) + 1).get_mpz_t(), 2));
  const Interval ln2 = two_atanh(Rational(1, 3), prec);
  const Interval lnm = two_atanh((m - 1) / (m + 1), prec);
  return ln2 * Rational(e) + lnm;
}

}  // namespace

Interval::Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) throw Error(ErrorKind::InvalidArgument, "interval with lo > hi");
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

Interval operator*(const Interval& a, const Rational& c) {
  if (c >= 0) return {a.lo * c, a.hi * c};
  return {a.hi * c, a.lo * c};
}

Interval pow(const Interval& a, unsigned k) {
  if (a.lo < 0) throw Error(ErrorKind::InvalidArgument, "integer power of an interval reaching below zero");
  return {pow(a.lo, k), pow(a.hi, k)};
}

std::string to_string(const Interval& x) { return "[" + to_string(x.lo) + ", " + to_string(x.hi) + "]"; }

Interval exp(const Interval& x, unsigned bits) {
  if (x.is_point()) return exp_point(x.lo, bits);
  return {exp_point(x.lo, bits).lo, exp_point(x.hi, bits).hi};
}

Interval ln(const Interval& x, unsigned bits) {
  if (x.is_point()) return ln_point(x.lo, bits);
  return {ln_point(x.lo, bits).lo, ln_point(x.hi, bits).hi};
}

Interval log2(const Rational& x, unsigned bits) {
  const unsigned prec = bits + 8;
  const Interval ln2 = two_atanh(Rational(1, 3), prec);
  const Interval lx = ln_point(x, prec);
  // ln2 > 0, so dividing by it reverses nothing; the quotient depends on the sign of lx.
  Rational c[4] = {lx.lo / ln2.lo, lx.lo / ln2.hi, lx.hi / ln2.lo, lx.hi / ln2.hi};
  return {round_down(*std::min_element(c, c + 4), prec), round_up(*std::max_element(c, c + 4), prec)};
}

Interval pow(const Interval& base, const Interval& exponent, unsigned bits) {
  if (base.lo < 0) throw Error(ErrorKind::InvalidArgument, "real power of a negative base");
  if (exponent.lo <= 0) throw Error(ErrorKind::InvalidArgument, "real power needs a positive exponent");
  auto at = [&](const Rational& b, const Rational& t) {
    if (b == 0) return Interval::point(0);
    return exp(ln(Interval::point(b), bits) * t, bits);
  };
  // x^t rises with x; in t it rises for x >= 1 and falls for x < 1.
  Interval a = at(base.lo, exponent.lo), b = at(base.lo, exponent.hi);
  Interval c = at(base.hi, exponent.lo), d = at(base.hi, exponent.hi);
  return {std::min(a.lo, b.lo), std::max(c.hi, d.hi)};
}

unsigned precision_for(const Rational& width) {
  if (width <= 0) return 64;
  long need = static_cast<long>(mpz_sizeinbase(width.get_den_mpz_t(), 2)) -
              static_cast<long>(mpz_sizeinbase(width.get_num_mpz_t(), 2)) + 24;
  return static_cast<unsigned>(std::max(64L, need));
}

}  // namespace threshkit
