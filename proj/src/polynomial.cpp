#include "threshkit/polynomial.hpp"

#include <algorithm>

#include "threshkit/error.hpp"

namespace threshkit {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

Polynomial Polynomial::monomial(const Rational& c, unsigned k) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  return *this * (Rational(1) / leading());
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial operator*(Polynomial a, const Rational& c) {
  for (auto& x : a.coeffs_) x *= c;
  a.trim();
  return a;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
  std::vector<Rational> rem = coeffs_;
  const int dd = divisor.degree();
  if (degree() < dd) return {Polynomial{}, *this};
  std::vector<Rational> quo(static_cast<std::size_t>(degree() - dd + 1), Rational(0));
  const Rational inv_lead = Rational(1) / divisor.leading();
  for (int i = degree(); i >= dd; --i) {
    const Rational f = rem[static_cast<std::size_t>(i)] * inv_lead;
    if (f == 0) continue;
    quo[static_cast<std::size_t>(i - dd)] = f;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i - dd + j)] -= f * divisor.coeffs_[static_cast<std::size_t>(j)];
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    Rational a = abs(c);
    bool unit = (a == 1 && i > 0);
    if (!unit) out += threshkit::to_string(a);
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p;
  Polynomial g = gcd(p, p.derivative());
  if (g.degree() <= 0) return p.monic();
  return p.divmod(g).first.monic();
}

std::vector<Polynomial> sturm_chain(const Polynomial& squarefree) {
  std::vector<Polynomial> chain{squarefree};
  if (squarefree.degree() <= 0) return chain;
  chain.push_back(squarefree.derivative());
  while (chain.back().degree() > 0) {
    Polynomial r = chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(r * Rational(-1));
  }
  return chain;
}

namespace {

int sign_variations(const std::vector<Polynomial>& chain, const Rational& x) {
  int variations = 0;
  int last = 0;
  for (const auto& p : chain) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

}  // namespace

int count_roots(const Polynomial& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero polynomial has infinitely many roots");
  if (a >= b || p.degree() == 0) return 0;
  auto chain = sturm_chain(squarefree_part(p));
  return sign_variations(chain, a) - sign_variations(chain, b);
}

int count_roots_closed(const Polynomial& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero polynomial has infinitely many roots");
  int at_a = p.sign_at(a) == 0 ? 1 : 0;
  if (a == b) return at_a;
  return at_a + count_roots(p, a, b);
}

bool nonnegative_on(const Polynomial& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) return true;
  if (p.sign_at(a) < 0 || p.sign_at(b) < 0) return false;
  if (a == b || p.degree() == 0) return true;
  const Polynomial s = squarefree_part(p);
  const auto chain = sturm_chain(s);
  // Between consecutive distinct roots p has constant sign, so an interval
  // with at most one root is decided by its endpoints.
  struct Span { Rational l, r; };
  std::vector<Span> work{{a, b}};
  while (!work.empty()) {
    Span sp = work.back();
    work.pop_back();
    int roots = sign_variations(chain, sp.l) - sign_variations(chain, sp.r) + (s.sign_at(sp.l) == 0 ? 1 : 0);
    if (roots <= 1) {
      if (p.sign_at(sp.l) < 0 || p.sign_at(sp.r) < 0) return false;
      continue;
    }
    Rational mid = (sp.l + sp.r) / 2;
    if (p.sign_at(mid) < 0) return false;
    work.push_back({sp.l, mid});
    work.push_back({mid, sp.r});
  }
  return true;
}

AlgebraicNumber::AlgebraicNumber(const Rational& value)
    : poly_(std::vector<Rational>{-value, Rational(1)}), lo_(value), hi_(value) {}

AlgebraicNumber::AlgebraicNumber(const Polynomial& p, const Rational& lo, const Rational& hi)
    : poly_(squarefree_part(p)), lo_(lo), hi_(hi) {
  if (lo_ > hi_) throw Error(ErrorKind::InvalidArgument, "isolating interval is reversed");
  if (poly_.is_zero() || count_roots_closed(poly_, lo_, hi_) != 1) {
    throw Error(ErrorKind::InvalidArgument, "polynomial " + p.to_string() + " has no unique root in [" +
                                                to_string(lo) + ", " + to_string(hi) + "]");
  }
  if (poly_.sign_at(lo_) == 0) {
    hi_ = lo_;
  } else if (poly_.sign_at(hi_) == 0) {
    lo_ = hi_;
  } else {
    sign_lo_ = poly_.sign_at(lo_);
  }
}

void AlgebraicNumber::refine() {
  if (is_rational()) return;
  Rational mid = (lo_ + hi_) / 2;
  int s = poly_.sign_at(mid);
  if (s == 0) {
    lo_ = hi_ = mid;
  } else if (s == sign_lo_) {
    lo_ = mid;
  } else {
    hi_ = mid;
  }
}

void AlgebraicNumber::refine_to(const Rational& width) {
  while (hi_ - lo_ > width) refine();
}

std::strong_ordering compare(AlgebraicNumber a, AlgebraicNumber b) {
  bool gcd_checked = false;
  for (;;) {
    if (a.hi_ < b.lo_) return std::strong_ordering::less;
    if (a.lo_ > b.hi_) return std::strong_ordering::greater;
    if (a.is_rational() && b.is_rational()) return std::strong_ordering::equal;
    if (!gcd_checked) {
      gcd_checked = true;
      Polynomial g = gcd(a.poly_, b.poly_);
      if (g.degree() >= 1) {
        Rational l = std::max<Rational>(a.lo_, b.lo_);
        Rational h = std::min<Rational>(a.hi_, b.hi_);
        if (count_roots_closed(g, l, h) >= 1) return std::strong_ordering::equal;
      }
    }
    if (a.hi_ - a.lo_ >= b.hi_ - b.lo_) a.refine();
    else b.refine();
  }
}

}  // namespace threshkit
