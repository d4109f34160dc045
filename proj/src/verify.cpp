#include "threshkit/verify.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "threshkit/cover_search.hpp"
#include "threshkit/error.hpp"

namespace threshkit {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "HOLDS";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    case Verdict::Violated: return "VIOLATED";
    case Verdict::Skipped: return "SKIPPED";
  }
  return "?";
}

bool BoundReport::any_violated() const {
  return std::any_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.verdict == Verdict::Violated; });
}

bool BoundReport::all_resolved() const {
  return std::none_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.verdict == Verdict::Inconclusive; });
}

bool ScalingReport::any_violated() const {
  return std::any_of(residuals.begin(), residuals.end(), [](const Residual& r) { return r.verdict == Verdict::Violated; });
}

std::string family_id(const Family& family) {
  std::string out = "n" + std::to_string(family.ground().size()) + ":";
  bool first = true;
  for (Mask g : family.generators()) {
    if (!first) out += "|";
    first = false;
    out += family.ground().render(g);
  }
  return out;
}

namespace {

const Rational kHalf(1, 2);

// An enclosed quantity, optionally with exact algebraic bounds lower <= value <= upper.
struct Quantity {
  Interval iv;
  std::optional<AlgebraicNumber> lower, upper;
};

Quantity from_enclosure(const Enclosure& e) {
  Quantity q{Interval(e.lo, e.hi), std::nullopt, std::nullopt};
  if (e.is_point()) q.lower = q.upper = AlgebraicNumber(e.lo);
  return q;
}

// The root of the increasing polynomial p - 1/2 inside [lo, hi], if p is
// strictly increasing there with exactly one crossing.
std::optional<AlgebraicNumber> crossing(const Polynomial& p, const Rational& lo, const Rational& hi) {
  const Polynomial shifted = p - Polynomial::constant(kHalf);
  if (shifted.is_zero() || shifted.sign_at(lo) > 0 || shifted.sign_at(hi) < 0) return std::nullopt;
  const Polynomial sq = squarefree_part(shifted);
  if (count_roots_closed(sq, lo, hi) != 1) return std::nullopt;
  return AlgebraicNumber(sq, lo, hi);
}

Quantity pc_quantity(const Family& family, const Enclosure& e) {
  Quantity q = from_enclosure(e);
  if (!e.is_point()) q.lower = q.upper = crossing(membership_polynomial(family), e.lo, e.hi);
  return q;
}

struct OptimizationQuantities {
  Quantity qc, qf;
  Enclosure qc_enc, qf_enc;
};

// Exact endpoints for q_c and q_f. A certified cover gives a lower bound
// through the root of its cost polynomial. An LP basis that stays optimal
// over the whole q_f enclosure pins q_f exactly; by weak duality the same
// polynomial bounds the integral optimum from below, so it also caps q_c.
OptimizationQuantities optimization_quantities(const Family& family, const Rational& width) {
  OptimizationQuantities out;
  const auto qc = q_c(family, width);
  const auto qf = q_f(family, width);
  out.qc_enc = qc.enclosure;
  out.qf_enc = qf.enclosure;
  out.qc = from_enclosure(qc.enclosure);
  out.qf = from_enclosure(qf.enclosure);

  if (!qc.enclosure.is_point()) {
    out.qc.lower = crossing(cost_polynomial(qc.certificates.lower_cover), qc.enclosure.lo, qc.enclosure.hi);
  }
  if (!qf.enclosure.is_point()) {
    const Rational& lo = qf.enclosure.lo;
    const Rational& hi = qf.enclosure.hi;
    out.qf.lower = crossing(cost_polynomial(qf.lower_cover), lo, hi);
    for (const Rational& at : {lo, hi}) {
      if (at <= 0 || at >= 1) continue;
      const auto opt = fractional_optimum(family, at);
      if (basis_stable_on(opt, lo, hi)) {
        out.qf.upper = crossing(opt.value_polynomial, lo, hi);
        if (out.qf.upper) break;
      }
    }
  }
  if (out.qf.upper && !qc.enclosure.is_point()) out.qc.upper = out.qf.upper;
  return out;
}

BoundCheck compare_le(std::string name, const Quantity& a, const Quantity& b) {
  BoundCheck c;
  c.name = std::move(name);
  c.lhs = a.iv;
  c.rhs = b.iv;
  if (a.iv.hi <= b.iv.lo) {
    c.verdict = Verdict::Holds;
  } else if (a.iv.lo > b.iv.hi) {
    c.verdict = Verdict::Violated;
  } else if (a.upper && b.lower && compare(*a.upper, *b.lower) <= 0) {
    c.verdict = Verdict::Holds;
    c.exact = true;
  } else if (a.lower && b.upper && compare(*a.lower, *b.upper) > 0) {
    c.verdict = Verdict::Violated;
    c.exact = true;
  } else {
    c.verdict = Verdict::Inconclusive;
  }
  return c;
}

BoundCheck skipped(std::string name, std::string note) {
  BoundCheck c;
  c.name = std::move(name);
  c.verdict = Verdict::Skipped;
  c.note = std::move(note);
  return c;
}

Quantity root_of_half(int l, const Rational& width) {
  // 2^(-1/l) is the only root of x^l - 1/2 in [0, 1]
  std::vector<Rational> coeffs(static_cast<std::size_t>(l) + 1, Rational(0));
  coeffs[0] = -kHalf;
  coeffs[static_cast<std::size_t>(l)] = 1;
  AlgebraicNumber x(Polynomial(std::move(coeffs)), Rational(0), Rational(1));
  x.refine_to(width);
  return {Interval(x.lo(), x.hi()), x, x};
}

BoundReport evaluate_bounds(const Family& family, const Rational& K, const Rational& width) {
  BoundReport r;
  r.family_id = family_id(family);
  r.l = largest_minimal_size(family);
  r.K = K;
  r.width = width;
  r.p_c = p_c(family, width);
  const auto opt = optimization_quantities(family, width);
  r.q_c = opt.qc_enc;
  r.q_f = opt.qf_enc;
  const Quantity pc = pc_quantity(family, r.p_c);
  const Quantity& qc = opt.qc;
  const Quantity& qf = opt.qf;
  const unsigned bits = precision_for(width);
  const Quantity trivial = root_of_half(r.l, width / 16);

  std::optional<Interval> exponential_rhs;
  if (r.l >= 2) {
    const Interval log2l = log2(Rational(r.l), bits);
    const Interval kq = qc.iv * K;
    const Interval scaled = kq * log2l;
    r.checks.push_back(compare_le("polynomial-lower", qc, pc));
    r.checks.push_back(compare_le("polynomial-upper", pc, Quantity{scaled, {}, {}}));
    if (qc.iv.hi <= Rational(1) / K) {
      const Interval base = Interval::point(1) - kq;
      const Interval rhs = Interval::point(1) - pow(base, log2l, bits);
      r.checks.push_back(compare_le("power", pc, Quantity{rhs, {}, {}}));
    } else {
      r.checks.push_back(skipped("power", "q_c may exceed 1/K"));
    }
    exponential_rhs = Interval::point(1) - exp(-scaled, bits);
    r.checks.push_back(compare_le("exponential", pc, Quantity{*exponential_rhs, {}, {}}));
  } else {
    const std::string note = "l(F) = 1";
    r.checks.push_back(skipped("polynomial-lower", note));
    r.checks.push_back(skipped("polynomial-upper", note));
    r.checks.push_back(skipped("power", note));
    r.checks.push_back(skipped("exponential", note));
  }
  r.checks.push_back(compare_le("trivial", pc, trivial));
  r.checks.push_back(compare_le("qc<=qf", qc, qf));
  r.checks.push_back(compare_le("qf<=pc", qf, pc));
  r.checks.push_back(compare_le("qc<=pc", qc, pc));
  if (exponential_rhs) {
    if (trivial.iv.hi < exponential_rhs->lo) r.trivial_tighter_than_exponential = true;
    else if (trivial.iv.lo > exponential_rhs->hi) r.trivial_tighter_than_exponential = false;
  }
  return r;
}

std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t n) {
  // uniform on [0, n): reject the low 2^64 mod n outputs
  const std::uint64_t reject_below = (0 - n) % n;
  for (;;) {
    std::uint64_t r = gen();
    if (r >= reject_below) return r % n;
  }
}

void require_random_ground(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "ground set must have at least one element");
  if (n > enumeration_cap()) throw Error(ErrorKind::CapExceeded, "ground set larger than the enumeration cap");
}

}  // namespace

BoundReport check_bounds(const Family& family, const Rational& K, const Rational& width, unsigned max_refinements) {
  if (K <= 0) throw Error(ErrorKind::InvalidArgument, "K must be positive");
  if (width <= 0) throw Error(ErrorKind::InvalidArgument, "width must be positive");
  Rational w = width;
  BoundReport r = evaluate_bounds(family, K, w);
  unsigned rounds = 0;
  while (!r.all_resolved() && !r.any_violated() && rounds < max_refinements) {
    w /= 16;
    ++rounds;
    r = evaluate_bounds(family, K, w);
  }
  r.refinements = rounds;
  return r;
}

ScalingReport check_clone_scaling(const Family& family, std::size_t k, const Rational& width, bool include_qf) {
  const auto cloned = clone_family(family, k);
  const Rational inv_k = Rational(1) / static_cast<unsigned long>(k);
  ScalingReport r;
  r.family_id = family_id(family);
  r.k = k;
  auto residual = [](std::string name, Interval v) {
    Verdict verdict = v.contains(0) ? Verdict::Holds : Verdict::Violated;
    return Residual{std::move(name), std::move(v), verdict};
  };

  r.qc_base = q_c(family, width).enclosure;
  r.qc_clone = q_c(cloned.family, width).enclosure;
  r.residuals.push_back(residual("qc(F_k)-qc(F)/k", Interval(r.qc_clone.lo, r.qc_clone.hi) -
                                                         Interval(r.qc_base.lo, r.qc_base.hi) * inv_k));
  if (include_qf) {
    r.qf_base = q_f(family, width).enclosure;
    r.qf_clone = q_f(cloned.family, width).enclosure;
    r.residuals.push_back(residual("qf(F_k)-qf(F)/k", Interval(r.qf_clone.lo, r.qf_clone.hi) -
                                                           Interval(r.qf_base.lo, r.qf_base.hi) * inv_k));
  } else {
    r.residuals.push_back({"qf(F_k)-qf(F)/k", Interval(), Verdict::Skipped});
  }
  r.pc_base = p_c(family, width);
  r.pc_clone = p_c(cloned.family, width);
  // 1 - (1 - p)^k is increasing in p
  const Interval miss = pow(Interval(1 - r.pc_clone.hi, 1 - r.pc_clone.lo), static_cast<unsigned>(k));
  r.residuals.push_back(residual("pc(F)-(1-(1-pc(F_k))^k)",
                                 Interval(r.pc_base.lo, r.pc_base.hi) - (Interval::point(1) - miss)));
  return r;
}

NonClonedSearch find_noncloned_cheapest(const Family& family, std::size_t k, const Rational& q, std::size_t limit) {
  const auto cloned = clone_family(family, k);
  const auto optima = enumerate_cheapest_covers(cloned.family, q, limit);
  NonClonedSearch out;
  out.cost = optima.cost;
  out.truncated = optima.truncated;
  out.optima = optima.covers.size();
  for (const auto& h : optima.covers) {
    if (!is_cloned_cover(h, cloned.map)) {
      out.witness = h;
      break;
    }
  }
  return out;
}

Family random_family(std::size_t n, std::size_t max_generators, std::uint64_t seed) {
  require_random_ground(n);
  if (max_generators == 0) throw Error(ErrorKind::InvalidArgument, "max_generators must be at least 1");
  std::mt19937_64 gen(seed);
  const std::uint64_t nonempty = (std::uint64_t{1} << n) - 1;
  const std::uint64_t m = std::min<std::uint64_t>(1 + bounded(gen, max_generators), nonempty);
  std::set<Mask> drawn;
  std::vector<Mask> order;
  while (order.size() < m) {
    Mask s = 1 + bounded(gen, nonempty);
    if (drawn.insert(s).second) order.push_back(s);
  }
  return normalize(order, GroundSet::numbered(n));
}

std::vector<Family> all_families(std::size_t n) {
  if (n == 0 || n > 5) throw Error(ErrorKind::InvalidArgument, "all_families supports 1 <= n <= 5");
  const GroundSet ground = GroundSet::numbered(n);
  std::vector<Mask> subsets;
  for (Mask s = 1; s < (Mask{1} << n); ++s) subsets.push_back(s);
  std::sort(subsets.begin(), subsets.end(), mask_less);

  std::vector<Family> out;
  std::vector<Mask> chosen;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == subsets.size()) {
      if (!chosen.empty()) out.push_back(normalize(chosen, ground));
      return;
    }
    self(self, i + 1);
    const Mask s = subsets[i];
    // earlier subsets are never larger, so only s ⊇ chosen can fail
    bool free = std::none_of(chosen.begin(), chosen.end(), [s](Mask c) { return is_subset(c, s); });
    if (free) {
      chosen.push_back(s);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const Family& a, const Family& b) {
    return search::cover_less(a.generators(), b.generators());
  });
  return out;
}

std::vector<SymmetryCounterexample> falsify_symmetry(std::size_t n, const PermutationGroup& group, std::size_t trials,
                                                     std::uint64_t seed) {
  std::vector<SymmetryCounterexample> out;
  if (trials == 0) return out;
  require_random_ground(n);
  if (group.degree() != n) throw Error(ErrorKind::GroundMismatch, "group degree differs from n");
  const auto elems = group.elements();
  const GroundSet ground = GroundSet::numbered(n);
  const std::uint64_t nonempty = (std::uint64_t{1} << n) - 1;
  std::mt19937_64 gen(seed);
  std::set<std::vector<Mask>> seen;
  const Rational sample_width = Rational(1, 1024);

  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t m = 1 + bounded(gen, std::min<std::uint64_t>(n, nonempty));
    std::vector<Mask> raw;
    for (std::uint64_t i = 0; i < m; ++i) {
      Mask s = 1 + bounded(gen, nonempty);
      for (const auto& g : elems) raw.push_back(PermutationGroup::apply(g, s));
    }
    Family f = normalize(raw, ground);
    if (!seen.insert(f.generators()).second) continue;

    std::set<Rational> qs;
    for (long i = 1; i <= 9; ++i) qs.insert(make_rational(i, 10));
    const auto qc = q_c(f, sample_width).enclosure;
    for (const Rational& q : {qc.lo, qc.hi}) {
      if (q > 0 && q < 1) qs.insert(q);
    }
    for (const Rational& q : qs) {
      auto res = symmetric_cheapest_exists(f, group, q);
      if (!res.exists) out.push_back({f, q, res.optimum, res.symmetric_optimum});
    }
  }
  return out;
}

}  // namespace threshkit
