#include "threshkit/rational.hpp"

#include <cctype>
#include <string>

#include "threshkit/error.hpp"

namespace threshkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::TrivialFamily: return "TrivialFamily";
    case ErrorKind::ForeignElement: return "ForeignElement";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::InvalidProbability: return "InvalidProbability";
    case ErrorKind::GroundMismatch: return "GroundMismatch";
    case ErrorKind::FibreError: return "FibreError";
    case ErrorKind::DuplicateInFibre: return "DuplicateInFibre";
    case ErrorKind::NotACover: return "NotACover";
    case ErrorKind::ProbabilityOverflow: return "ProbabilityOverflow";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Error";
}

Rational make_rational(long num, long den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  out.canonicalize();
  return out;
}

Integer pow(const Integer& base, unsigned exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (s.size() == start) throw Error(ErrorKind::Parse, "malformed rational '" + std::string(whole) + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw Error(ErrorKind::Parse, "malformed rational '" + std::string(whole) + "'");
    }
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  if (t.empty()) throw Error(ErrorKind::Parse, "empty rational");

  if (auto caret = t.find('^'); caret != std::string_view::npos) {
    Integer base = parse_integer(t.substr(0, caret), text);
    Integer e = parse_integer(t.substr(caret + 1), text);
    if (base == 0 || !e.fits_slong_p() || abs(e) > 4096) {
      throw Error(ErrorKind::Parse, "unsupported power '" + std::string(text) + "'");
    }
    long ex = e.get_si();
    Rational b(base);
    return ex >= 0 ? pow(b, static_cast<unsigned>(ex)) : Rational(1) / pow(b, static_cast<unsigned>(-ex));
  }
  if (auto slash = t.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(t.substr(0, slash), text);
    Integer den = parse_integer(t.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = t.find('.'); dot != std::string_view::npos) {
    std::string_view whole = t.substr(0, dot);
    std::string_view frac = t.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (frac.empty() && (whole.empty() || whole == "-" || whole == "+")) {
      throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
    }
    Integer ip = (whole.empty() || whole == "-" || whole == "+") ? Integer(0) : parse_integer(whole, text);
    Integer fp = frac.empty() ? Integer(0) : parse_integer(frac, text);
    if (!frac.empty() && (frac.front() == '-' || frac.front() == '+')) {
      throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
    }
    Integer scale = pow(Integer(10), static_cast<unsigned>(frac.size()));
    Rational r(abs(ip) * scale + fp, scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_integer(t, text));
}

std::string to_decimal(const Rational& r, int digits) {
  if (r == 0) return "0";
  if (digits < 1) digits = 1;
  const bool negative = r < 0;
  Rational scaled = abs(r);
  const Integer upper = pow(Integer(10), static_cast<unsigned>(digits));
  const Integer lower = pow(Integer(10), static_cast<unsigned>(digits - 1));
  long shift = 0;  // value = scaled * 10^-shift
  while (scaled >= Rational(upper)) { scaled /= 10; --shift; }
  while (scaled < Rational(lower)) { scaled *= 10; ++shift; }
  // round half up
  Integer m = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  if (m == upper) { m /= 10; --shift; }
  std::string body = m.get_str();
  std::string out;
  if (shift <= 0) {
    out = body + std::string(static_cast<std::size_t>(-shift), '0');
  } else if (static_cast<std::size_t>(shift) >= body.size()) {
    out = "0." + std::string(static_cast<std::size_t>(shift) - body.size(), '0') + body;
  } else {
    out = body.substr(0, body.size() - shift) + "." + body.substr(body.size() - shift);
  }
  return negative ? "-" + out : out;
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo > hi || lo < 0) throw Error(ErrorKind::InvalidArgument, "simplest_between needs 0 <= lo <= hi");
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // lo and hi both lie strictly inside (fl, fl + 1)
  Rational inner = simplest_between(Rational(1) / (hi - fl), Rational(1) / (lo - fl));
  return Rational(fl) + Rational(1) / inner;
}

unsigned __int128 floor_scaled(const Rational& r, unsigned shift) {
  Integer num = r.get_num();
  num <<= shift;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), r.get_den_mpz_t());
  Integer low = q & Integer("18446744073709551615");
  Integer high = q >> 64;
  auto to_u64 = [](const Integer& z) {
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, -1, sizeof v, 0, 0, z.get_mpz_t());
    return v;
  };
  return (static_cast<unsigned __int128>(to_u64(high)) << 64) | to_u64(low);
}

}  // namespace threshkit
