#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "threshkit/rational.hpp"

namespace threshkit {

/// Dense univariate polynomial over the rationals; coefficient i multiplies x^i.
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  static Polynomial constant(const Rational& c);
  /// c * x^k
  static Polynomial monomial(const Rational& c, unsigned k);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  int sign_at(const Rational& x) const { return sgn((*this)(x)); }

  Polynomial derivative() const;
  Polynomial monic() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division; throws on a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Monic greatest common divisor (zero if both are zero).
Polynomial gcd(Polynomial a, Polynomial b);

/// p / gcd(p, p'): same roots, all simple.
Polynomial squarefree_part(const Polynomial& p);

/// Sturm chain of a squarefree polynomial.
std::vector<Polynomial> sturm_chain(const Polynomial& squarefree);

/// Number of distinct real roots of p in the half-open interval (a, b].
int count_roots(const Polynomial& p, const Rational& a, const Rational& b);

/// Number of distinct real roots of p in the closed interval [a, b].
int count_roots_closed(const Polynomial& p, const Rational& a, const Rational& b);

/// True iff p(x) >= 0 for every x in [a, b] (exact, via root isolation).
bool nonnegative_on(const Polynomial& p, const Rational& a, const Rational& b);

/// A real algebraic number: the unique root of a squarefree polynomial in
/// [lo, hi]. When lo == hi the number is that rational.
class AlgebraicNumber {
 public:
  explicit AlgebraicNumber(const Rational& value);
  /// Throws InvalidArgument unless p has exactly one distinct root in [lo, hi].
  AlgebraicNumber(const Polynomial& p, const Rational& lo, const Rational& hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  const Polynomial& polynomial() const { return poly_; }
  bool is_rational() const { return lo_ == hi_; }

  /// Halves the isolating interval (or collapses it onto an exact root).
  void refine();
  /// Refines until hi - lo <= width.
  void refine_to(const Rational& width);

  /// Exact comparison. Distinct numbers are separated by refinement; equal
  /// ones are detected through a common factor with a root in both intervals.
  friend std::strong_ordering compare(AlgebraicNumber a, AlgebraicNumber b);

 private:
  Polynomial poly_;
  Rational lo_, hi_;
  int sign_lo_ = 0;
};

}  // namespace threshkit
