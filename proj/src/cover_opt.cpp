#include "threshkit/cover_opt.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "threshkit/cover_search.hpp"
#include "threshkit/covering_lp.hpp"
#include "threshkit/error.hpp"

namespace threshkit {

Cover::Cover(std::vector<Mask> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end(), mask_less);
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool operator<(const Cover& a, const Cover& b) { return search::cover_less(a.members_, b.members_); }

namespace {

void require_probability(const Rational& q) {
  if (q < 0 || q > 1) throw Error(ErrorKind::InvalidProbability, "q = " + to_string(q) + " is outside [0, 1]");
}

void require_open_probability(const Rational& q) {
  if (q <= 0 || q >= 1) throw Error(ErrorKind::InvalidProbability, "q = " + to_string(q) + " is outside (0, 1)");
}

std::vector<Rational> powers(const Rational& q, std::size_t n) {
  std::vector<Rational> out(n + 1);
  out[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) out[i] = out[i - 1] * q;
  return out;
}

// The covering instance over a family's generators: one candidate per
// pool subset, covering the generators that contain it.
struct PoolProblem {
  explicit PoolProblem(const Family& f) : family(f), pool(candidate_pool(f)) {
    const auto& gens = f.generators();
    covers.resize(pool.size());
    sizes.resize(pool.size());
    for (std::size_t c = 0; c < pool.size(); ++c) {
      sizes[c] = static_cast<unsigned>(mask_size(pool[c]));
      for (std::size_t g = 0; g < gens.size(); ++g) {
        if (is_subset(pool[c], gens[g])) covers[c].push_back(g);
      }
    }
  }

  std::vector<search::Candidate> candidates(const Rational& q) const {
    const auto pw = powers(q, family.ground().size());
    std::vector<search::Candidate> out(pool.size());
    for (std::size_t c = 0; c < pool.size(); ++c) {
      out[c].weight = pw[sizes[c]];
      out[c].covers = covers[c];
      out[c].members = {pool[c]};
    }
    return out;
  }

  CoveringLp lp(const Rational& q) const {
    const auto pw = powers(q, family.ground().size());
    CoveringLp out;
    out.elements = family.generators().size();
    out.covers = covers;
    out.costs.resize(pool.size());
    for (std::size_t c = 0; c < pool.size(); ++c) out.costs[c] = pw[sizes[c]];
    return out;
  }

  search::Result solve(const Rational& q, search::Options opt) const {
    return search::solve(family.generators().size(), candidates(q), opt);
  }

  FractionalOptimum fractional(const Rational& q) const {
    const auto sol = solve_covering_lp(lp(q));
    FractionalOptimum out;
    out.value = sol.value;
    std::vector<Rational> coeffs(family.ground().size() + 1, Rational(0));
    for (std::size_t c = 0; c < pool.size(); ++c) {
      if (sol.weights[c] == 0) continue;
      out.cover.weights[pool[c]] = sol.weights[c];
      coeffs[sizes[c]] += sol.weights[c];
    }
    out.value_polynomial = Polynomial(std::move(coeffs));
    out.basic_values = basic_value_polynomials(sol, sizes);
    return out;
  }

  const Family& family;
  std::vector<Mask> pool;
  std::vector<std::vector<std::size_t>> covers;
  std::vector<unsigned> sizes;
};

const Rational kHalf(1, 2);

}  // namespace

Rational cost(const Cover& cover, const Rational& q) {
  require_probability(q);
  Rational total = 0;
  for (Mask m : cover.members()) total += pow(q, static_cast<unsigned>(mask_size(m)));
  return total;
}

Rational cost(const FractionalCover& cover, const Rational& q) {
  require_probability(q);
  Rational total = 0;
  for (const auto& [m, w] : cover.weights) total += w * pow(q, static_cast<unsigned>(mask_size(m)));
  return total;
}

Polynomial cost_polynomial(const Cover& cover) {
  std::vector<Rational> coeffs(kMaxGroundSize + 1, Rational(0));
  for (Mask m : cover.members()) coeffs[mask_size(m)] += 1;
  return Polynomial(std::move(coeffs));
}

Polynomial cost_polynomial(const FractionalCover& cover) {
  std::vector<Rational> coeffs(kMaxGroundSize + 1, Rational(0));
  for (const auto& [m, w] : cover.weights) coeffs[mask_size(m)] += w;
  return Polynomial(std::move(coeffs));
}

bool is_cover(const Cover& cover, const Family& family) {
  for (Mask m : cover.members()) {
    if (!family.ground().holds(m)) throw Error(ErrorKind::GroundMismatch, "cover member lies outside the family's ground set");
  }
  for (Mask g : family.generators()) {
    bool hit = std::any_of(cover.members().begin(), cover.members().end(), [g](Mask s) { return is_subset(s, g); });
    if (!hit) return false;
  }
  return true;
}

bool is_fractional_cover(const FractionalCover& cover, const Family& family) {
  for (const auto& [m, w] : cover.weights) {
    if (!family.ground().holds(m)) throw Error(ErrorKind::GroundMismatch, "cover member lies outside the family's ground set");
    if (w < 0) return false;
  }
  for (Mask g : family.generators()) {
    Rational total = 0;
    for (const auto& [m, w] : cover.weights) {
      if (is_subset(m, g)) total += w;
    }
    if (total < 1) return false;
  }
  return true;
}

std::vector<Mask> candidate_pool(const Family& family) {
  constexpr std::size_t kPoolCap = std::size_t{1} << 20;
  for (Mask g : family.generators()) {
    if (mask_size(g) > 20) throw Error(ErrorKind::CapExceeded, "candidate pool exceeds 2^20 subsets");
  }
  std::unordered_set<Mask> seen;
  for (Mask g : family.generators()) {
    for (Mask s = g;; s = (s - 1) & g) {
      seen.insert(s);
      if (seen.size() > kPoolCap) throw Error(ErrorKind::CapExceeded, "candidate pool exceeds 2^20 subsets");
      if (s == 0) break;
    }
  }
  std::vector<Mask> pool(seen.begin(), seen.end());
  std::sort(pool.begin(), pool.end(), mask_less);
  return pool;
}

MinCover min_cost_cover(const Family& family, const Rational& q) {
  require_open_probability(q);
  PoolProblem pp(family);
  search::Options opt;
  opt.mode = search::Mode::Canonical;
  auto res = pp.solve(q, opt);
  return {Cover(res.solutions.front().members), *res.optimum};
}

CheapDecision decide_cheap(const Family& family, const Rational& q) {
  require_open_probability(q);
  PoolProblem pp(family);
  search::Options opt;
  opt.mode = search::Mode::Decide;
  auto res = pp.solve(q, opt);
  CheapDecision out;
  out.sign = res.decision;
  if (!res.solutions.empty()) out.witness = Cover(res.solutions.front().members);
  return out;
}

QcResult q_c(const Family& family, const Rational& width) {
  PoolProblem pp(family);
  std::map<Rational, Cover> witness;
  search::Options opt;
  opt.mode = search::Mode::Decide;
  auto side = [&](const Rational& q) {
    auto res = pp.solve(q, opt);
    if (res.decision <= 0) witness.emplace(q, Cover(res.solutions.front().members));
    return res.decision;
  };
  QcResult out;
  out.enclosure = bisect_crossing(QuantityKind::QC, width, side);
  auto& cert = out.certificates;
  cert.lower_q = out.enclosure.lo;
  if (out.enclosure.lo == 0) {
    cert.lower_cover = Cover(family.generators());
  } else {
    cert.lower_cover = witness.at(out.enclosure.lo);
  }
  cert.lower_cost = cost(cert.lower_cover, cert.lower_q);
  cert.upper_q = out.enclosure.hi;
  if (out.enclosure.is_point()) cert.upper_proof = "min-cost=1/2";
  else if (out.enclosure.hi == 1) cert.upper_proof = "min-cost>=1";
  else cert.upper_proof = "min-cost>1/2";
  return out;
}

FractionalOptimum fractional_optimum(const Family& family, const Rational& q) {
  require_probability(q);
  return PoolProblem(family).fractional(q);
}

bool basis_stable_on(const FractionalOptimum& opt, const Rational& a, const Rational& b) {
  return std::all_of(opt.basic_values.begin(), opt.basic_values.end(),
                     [&](const Polynomial& p) { return nonnegative_on(p, a, b); });
}

QfResult q_f(const Family& family, const Rational& width) {
  PoolProblem pp(family);
  std::map<Rational, FractionalOptimum> at;
  auto side = [&](const Rational& q) {
    auto opt = pp.fractional(q);
    int s = sgn(opt.value - kHalf);
    if (s <= 0) at.emplace(q, std::move(opt));
    return s;
  };
  QfResult out;
  out.enclosure = bisect_crossing(QuantityKind::QF, width, side);
  if (out.enclosure.lo == 0) {
    for (Mask g : family.generators()) out.lower_cover.weights[g] = 1;
  } else {
    out.lower_cover = at.at(out.enclosure.lo).cover;
  }
  out.lower_cost = cost(out.lower_cover, out.enclosure.lo);
  return out;
}

CheapestCovers enumerate_cheapest_covers(const Family& family, const Rational& q, std::size_t limit) {
  require_open_probability(q);
  if (limit == 0) throw Error(ErrorKind::InvalidArgument, "limit must be at least 1");
  PoolProblem pp(family);
  search::Options opt;
  opt.mode = search::Mode::EnumerateAll;
  opt.limit = limit;
  auto res = pp.solve(q, opt);
  CheapestCovers out;
  out.cost = *res.optimum;
  out.truncated = res.truncated;
  for (auto& s : res.solutions) out.covers.emplace_back(std::move(s.members));
  std::sort(out.covers.begin(), out.covers.end());
  return out;
}

PermutationGroup::PermutationGroup(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)) {
  if (degree == 0 || degree > kMaxGroundSize) throw Error(ErrorKind::InvalidArgument, "permutation degree out of range");
  for (const auto& p : generators_) {
    if (p.size() != degree) throw Error(ErrorKind::InvalidArgument, "permutation has the wrong degree");
    std::vector<char> hit(degree, 0);
    for (std::size_t x : p) {
      if (x >= degree || hit[x]) throw Error(ErrorKind::InvalidArgument, "permutation is not a bijection");
      hit[x] = 1;
    }
  }
}

PermutationGroup PermutationGroup::trivial(std::size_t degree) { return PermutationGroup(degree, {}); }

std::vector<PermutationGroup::Permutation> PermutationGroup::elements(std::size_t cap) const {
  Permutation id(degree_);
  for (std::size_t i = 0; i < degree_; ++i) id[i] = i;
  std::set<Permutation> seen{id};
  std::deque<Permutation> queue{id};
  while (!queue.empty()) {
    Permutation cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : generators_) {
      Permutation next(degree_);
      for (std::size_t i = 0; i < degree_; ++i) next[i] = g[cur[i]];
      if (seen.insert(next).second) {
        if (seen.size() > cap) throw Error(ErrorKind::CapExceeded, "permutation group order exceeds " + std::to_string(cap));
        queue.push_back(std::move(next));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

Mask PermutationGroup::apply(const Permutation& perm, Mask m) {
  Mask out = 0;
  for (; m; m &= m - 1) out |= Mask{1} << perm[static_cast<std::size_t>(std::countr_zero(m))];
  return out;
}

void require_stabilizes(const Family& family, const PermutationGroup& group) {
  if (group.degree() != family.ground().size()) {
    throw Error(ErrorKind::GroundMismatch, "group degree differs from the ground set size");
  }
  std::set<Mask> gens(family.generators().begin(), family.generators().end());
  for (const auto& p : group.generators()) {
    for (Mask g : family.generators()) {
      if (!gens.count(PermutationGroup::apply(p, g))) {
        throw Error(ErrorKind::NotSymmetric, "group does not map the family's generators onto themselves");
      }
    }
  }
}

SymmetryResult symmetric_cheapest_exists(const Family& family, const PermutationGroup& group, const Rational& q) {
  require_open_probability(q);
  require_stabilizes(family, group);
  const auto elems = group.elements();
  PoolProblem pp(family);

  SymmetryResult out;
  {
    search::Options opt;
    opt.mode = search::Mode::Minimize;
    out.optimum = *pp.solve(q, opt).optimum;
  }

  // orbits of the (group-invariant) pool
  std::unordered_map<Mask, std::size_t> pos;
  for (std::size_t c = 0; c < pp.pool.size(); ++c) pos.emplace(pp.pool[c], c);
  std::vector<char> done(pp.pool.size(), 0);
  const auto base = pp.candidates(q);
  std::vector<search::Candidate> orbit_cands;
  for (std::size_t c = 0; c < pp.pool.size(); ++c) {
    if (done[c]) continue;
    std::set<Mask, MaskLess> orbit;
    for (const auto& g : elems) orbit.insert(PermutationGroup::apply(g, pp.pool[c]));
    search::Candidate cand;
    cand.weight = 0;
    std::set<std::size_t> covered;
    for (Mask m : orbit) {
      std::size_t i = pos.at(m);
      done[i] = 1;
      cand.weight += base[i].weight;
      covered.insert(base[i].covers.begin(), base[i].covers.end());
      cand.members.push_back(m);
    }
    cand.covers.assign(covered.begin(), covered.end());
    orbit_cands.push_back(std::move(cand));
  }
  search::Options opt;
  opt.mode = search::Mode::Canonical;
  auto res = search::solve(family.generators().size(), orbit_cands, opt);
  out.symmetric_optimum = *res.optimum;
  out.exists = out.symmetric_optimum == out.optimum;
  if (out.exists) out.witness = Cover(res.solutions.front().members);
  return out;
}

}  // namespace threshkit
