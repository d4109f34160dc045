#include "threshkit/cover_search.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "threshkit/covering_lp.hpp"
#include "threshkit/error.hpp"

namespace threshkit::search {

bool cover_less(const std::vector<Mask>& a, const std::vector<Mask>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), mask_less);
}

namespace {

using u128 = unsigned __int128;

class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  std::size_t and_count(const Bits& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }
  Bits minus(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~o.words_[i];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }
  friend bool operator==(const Bits& a, const Bits& b) { return a.words_ == b.words_; }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      for (std::uint64_t w = words_[i]; w; w &= w - 1) f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
    }
  }
  template <class F>
  void for_each_and(const Bits& o, F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      for (std::uint64_t w = words_[i] & o.words_[i]; w; w &= w - 1) {
        f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      }
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Prepared {
  std::size_t elements = 0;
  std::vector<std::size_t> original;  // reduced index -> caller's index
  std::vector<Rational> weight;
  unsigned shift = 62;                   // every weight * 2^shift < 2^63
  std::vector<std::uint64_t> weight_fp;  // floor(weight * 2^shift)
  std::vector<Bits> cover;
  std::vector<std::size_t> cover_size;
  std::vector<const std::vector<Mask>*> members;
  std::vector<std::vector<std::size_t>> by_element;
};

// Drops candidates that can never matter. For every mode a candidate covering
// a subset of another's elements at strictly higher weight never appears in an
// optimal cover. Modes that only need one optimum also drop weakly dominated
// candidates, keeping the earliest of exact duplicates.
Prepared prepare(std::size_t elements, const std::vector<Candidate>& cands, Mode mode) {
  const std::size_t p = cands.size();
  std::vector<Bits> cover(p, Bits(elements));
  std::vector<char> covered(elements, 0);
  for (std::size_t c = 0; c < p; ++c) {
    if (cands[c].weight <= 0) throw Error(ErrorKind::InvalidArgument, "candidate weights must be positive");
    for (std::size_t e : cands[c].covers) {
      if (e >= elements) throw Error(ErrorKind::InvalidArgument, "candidate covers an unknown element");
      cover[c].set(e);
      covered[e] = 1;
    }
  }
  for (std::size_t e = 0; e < elements; ++e) {
    if (!covered[e]) throw Error(ErrorKind::InvalidArgument, "an element has no covering candidate");
  }
  const bool keep_ties = (mode == Mode::Canonical || mode == Mode::EnumerateAll);
  std::vector<std::size_t> sizes(p);
  for (std::size_t c = 0; c < p; ++c) sizes[c] = cover[c].count();

  std::vector<char> dropped(p, 0);
  for (std::size_t c = 0; c < p; ++c) {
    if (sizes[c] == 0) {
      dropped[c] = 1;
      continue;
    }
    for (std::size_t d = 0; d < p && !dropped[c]; ++d) {
      if (d == c || sizes[d] < sizes[c] || cands[d].weight > cands[c].weight) continue;
      if (!cover[c].subset_of(cover[d])) continue;
      const bool cheaper = cands[d].weight < cands[c].weight;
      const bool wider = sizes[d] > sizes[c];
      if (cheaper) dropped[c] = 1;
      else if (!keep_ties && (wider || d < c)) dropped[c] = 1;
    }
  }

  Prepared prep;
  prep.elements = elements;
  Rational max_weight = 0;
  for (std::size_t c = 0; c < p; ++c) {
    if (!dropped[c]) max_weight = std::max(max_weight, cands[c].weight);
  }
  while (prep.shift > 0 && max_weight * pow(Rational(2), prep.shift) >= pow(Rational(2), 63)) --prep.shift;
  for (std::size_t c = 0; c < p; ++c) {
    if (dropped[c]) continue;
    prep.original.push_back(c);
    prep.weight.push_back(cands[c].weight);
    prep.weight_fp.push_back(static_cast<std::uint64_t>(floor_scaled(cands[c].weight, prep.shift)));
    prep.cover.push_back(cover[c]);
    prep.cover_size.push_back(sizes[c]);
    prep.members.push_back(&cands[c].members);
  }
  // Price order: cheapest weight per covered element first.
  const std::size_t live = prep.original.size();
  std::vector<std::size_t> order(live);
  for (std::size_t i = 0; i < live; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    Rational lhs = prep.weight[a] * static_cast<unsigned long>(prep.cover_size[b]);
    Rational rhs = prep.weight[b] * static_cast<unsigned long>(prep.cover_size[a]);
    if (lhs != rhs) return lhs < rhs;
    return a < b;
  });
  prep.by_element.assign(elements, {});
  for (std::size_t c : order) prep.cover[c].for_each([&](std::size_t e) { prep.by_element[e].push_back(c); });
  return prep;
}

class Searcher {
 public:
  Searcher(const Prepared& prep, const Options& opt, Result& res)
      : prep_(prep), opt_(opt), res_(res), forbidden_(prep.original.size(), 0) {}

  void run() {
    const std::size_t live = prep_.original.size();
    Bits all(prep_.elements);
    for (std::size_t e = 0; e < prep_.elements; ++e) all.set(e);

    if (opt_.mode == Mode::Decide) {
      set_bound(opt_.threshold);
    } else {
      greedy(all);
    }

    if (live <= opt_.lp_pool_limit) {
      CoveringLp lp;
      lp.elements = prep_.elements;
      lp.costs = prep_.weight;
      lp.covers.resize(live);
      for (std::size_t c = 0; c < live; ++c) {
        prep_.cover[c].for_each([&](std::size_t e) { lp.covers[c].push_back(e); });
      }
      const Rational lp_bound = solve_covering_lp(lp).value;
      if (prune(sgn(lp_bound - bound_))) {
        finish();
        return;
      }
    }
    scratch_.resize(prep_.elements + 1);
    dfs(all, 0);
    finish();
  }

 private:
  void set_bound(const Rational& b) {
    bound_ = b;
    bound_fp_ = floor_scaled(b, prep_.shift);
  }

  void greedy(const Bits& all) {
    Bits uncovered = all;
    std::vector<std::size_t> picked;
    while (uncovered.any()) {
      std::size_t best = prep_.original.size();
      std::size_t best_k = 0;
      for (std::size_t c = 0; c < prep_.original.size(); ++c) {
        std::size_t k = prep_.cover[c].and_count(uncovered);
        if (k == 0) continue;
        if (best == prep_.original.size() ||
            prep_.weight[c] * static_cast<unsigned long>(best_k) < prep_.weight[best] * static_cast<unsigned long>(k)) {
          best = c;
          best_k = k;
        }
      }
      picked.push_back(best);
      uncovered = uncovered.minus(prep_.cover[best]);
    }
    // reverse delete
    for (std::size_t i = picked.size(); i-- > 0;) {
      Bits rest = all;
      for (std::size_t j = 0; j < picked.size(); ++j) {
        if (j != i) rest = rest.minus(prep_.cover[picked[j]]);
      }
      if (!rest.any()) picked.erase(picked.begin() + static_cast<std::ptrdiff_t>(i));
    }
    Rational cost = 0;
    for (std::size_t c : picked) cost += prep_.weight[c];
    set_bound(cost);
    have_incumbent_ = true;
    if (opt_.mode == Mode::Minimize || opt_.mode == Mode::Canonical) {
      incumbent_ = make_solution(picked, cost);
    }
  }

  Solution make_solution(std::vector<std::size_t> picked, const Rational& cost) const {
    Solution s;
    s.cost = cost;
    for (std::size_t c : picked) {
      for (Mask m : *prep_.members[c]) s.members.push_back(m);
    }
    std::sort(s.members.begin(), s.members.end(), mask_less);
    for (auto& c : picked) c = prep_.original[c];
    std::sort(picked.begin(), picked.end());
    s.chosen = std::move(picked);
    return s;
  }

  std::size_t members_so_far() const {
    std::size_t n = 0;
    for (std::size_t c : chosen_) n += prep_.members[c]->size();
    return n;
  }

  // sign = sgn(lower bound - bound_)
  bool prune(int sign) const {
    switch (opt_.mode) {
      case Mode::Minimize: return sign >= 0;
      case Mode::Decide: return decide_equal_ ? sign >= 0 : sign > 0;
      case Mode::EnumerateAll: return sign > 0;
      case Mode::Canonical:
        if (sign > 0) return true;
        return sign == 0 && members_so_far() + 1 > incumbent_.members.size();
    }
    return false;
  }

  Rational exact_lower_bound(const Bits& uncovered) {
    ++res_.exact_bound_evaluations;
    std::vector<std::optional<Rational>> price(prep_.elements);
    for (std::size_t c = 0; c < prep_.original.size(); ++c) {
      if (forbidden_[c]) continue;
      std::size_t k = prep_.cover[c].and_count(uncovered);
      if (k == 0) continue;
      Rational r = prep_.weight[c] / static_cast<unsigned long>(k);
      prep_.cover[c].for_each_and(uncovered, [&](std::size_t e) {
        if (!price[e] || r < *price[e]) price[e] = r;
      });
    }
    Rational lb = cost_;
    uncovered.for_each([&](std::size_t e) { lb += *price[e]; });
    return lb;
  }

  void dfs(const Bits& uncovered, std::size_t depth) {
    ++res_.nodes;
    if (!uncovered.any()) {
      leaf();
      return;
    }
    auto& sc = scratch_[depth];
    sc.price.assign(prep_.elements, std::numeric_limits<std::uint64_t>::max());
    sc.live.assign(prep_.elements, 0);
    for (std::size_t c = 0; c < prep_.original.size(); ++c) {
      if (forbidden_[c]) continue;
      std::size_t k = prep_.cover[c].and_count(uncovered);
      if (k == 0) continue;
      std::uint64_t r = prep_.weight_fp[c] / k;
      prep_.cover[c].for_each_and(uncovered, [&](std::size_t e) {
        sc.price[e] = std::min(sc.price[e], r);
        ++sc.live[e];
      });
    }
    u128 lb_fp = cost_fp_;
    std::size_t branch = prep_.elements;
    std::size_t open = 0;
    bool dead = false;
    uncovered.for_each([&](std::size_t e) {
      ++open;
      if (sc.live[e] == 0) {
        dead = true;
        return;
      }
      lb_fp += sc.price[e];
      if (branch == prep_.elements || sc.live[e] < sc.live[branch]) branch = e;
    });
    if (dead) return;

    // With S = 2^shift: lb * S lies in [lb_fp, lb_fp + err), bound_ * S in [bound_fp_, bound_fp_ + 1).
    const u128 err = static_cast<u128>(depth + 2 * open + 2);
    int sign;
    if (lb_fp >= bound_fp_ + 1) sign = 1;
    else if (lb_fp + err <= bound_fp_) sign = -1;
    else sign = sgn(exact_lower_bound(uncovered) - bound_);
    if (prune(sign)) return;

    std::vector<std::size_t> excluded;
    for (std::size_t c : prep_.by_element[branch]) {
      if (forbidden_[c]) continue;
      chosen_.push_back(c);
      cost_ += prep_.weight[c];
      cost_fp_ += prep_.weight_fp[c];
      dfs(uncovered.minus(prep_.cover[c]), depth + 1);
      cost_fp_ -= prep_.weight_fp[c];
      cost_ -= prep_.weight[c];
      chosen_.pop_back();
      if (stop_) break;
      forbidden_[c] = 1;
      excluded.push_back(c);
    }
    for (std::size_t c : excluded) forbidden_[c] = 0;
  }

  void leaf() {
    switch (opt_.mode) {
      case Mode::Minimize:
        if (cost_ < bound_) {
          incumbent_ = make_solution(chosen_, cost_);
          set_bound(cost_);
        }
        break;
      case Mode::Decide:
        if (cost_ < opt_.threshold) {
          incumbent_ = make_solution(chosen_, cost_);
          have_incumbent_ = true;
          res_.decision = -1;
          stop_ = true;
        } else if (cost_ == opt_.threshold && !decide_equal_) {
          incumbent_ = make_solution(chosen_, cost_);
          have_incumbent_ = true;
          decide_equal_ = true;
        }
        break;
      case Mode::Canonical: {
        Solution s = make_solution(chosen_, cost_);
        if (s.cost < incumbent_.cost ||
            (s.cost == incumbent_.cost && cover_less(s.members, incumbent_.members))) {
          incumbent_ = std::move(s);
          set_bound(cost_);
        }
        break;
      }
      case Mode::EnumerateAll:
        if (cost_ < bound_) {
          res_.solutions.clear();
          res_.truncated = false;
          set_bound(cost_);
        }
        if (cost_ == bound_) {
          if (res_.solutions.size() < opt_.limit) res_.solutions.push_back(make_solution(chosen_, cost_));
          else res_.truncated = true;
        }
        break;
    }
  }

  void finish() {
    switch (opt_.mode) {
      case Mode::Minimize:
      case Mode::Canonical:
        res_.optimum = incumbent_.cost;
        res_.solutions = {incumbent_};
        break;
      case Mode::Decide:
        if (have_incumbent_) {
          res_.optimum = incumbent_.cost;
          res_.solutions = {incumbent_};
          if (res_.decision != -1) res_.decision = 0;
        } else {
          res_.decision = 1;
        }
        break;
      case Mode::EnumerateAll:
        res_.optimum = bound_;
        std::sort(res_.solutions.begin(), res_.solutions.end(),
                  [](const Solution& a, const Solution& b) { return cover_less(a.members, b.members); });
        break;
    }
  }

  struct Scratch {
    std::vector<std::uint64_t> price;
    std::vector<std::uint32_t> live;
  };

  const Prepared& prep_;
  const Options& opt_;
  Result& res_;
  std::vector<char> forbidden_;
  std::vector<std::size_t> chosen_;
  std::vector<Scratch> scratch_;
  Rational cost_ = 0;
  u128 cost_fp_ = 0;
  Rational bound_;
  u128 bound_fp_ = 0;
  bool have_incumbent_ = false;
  bool decide_equal_ = false;
  bool stop_ = false;
  Solution incumbent_;
};

}  // namespace

Result solve(std::size_t elements, const std::vector<Candidate>& candidates, const Options& options) {
  if (elements == 0) throw Error(ErrorKind::InvalidArgument, "cover search needs at least one element");
  Prepared prep = prepare(elements, candidates, options.mode);
  Result res;
  Searcher(prep, options, res).run();
  return res;
}

}  // namespace threshkit::search
