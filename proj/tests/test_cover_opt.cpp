#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "threshkit/clone.hpp"
#include "threshkit/error.hpp"
#include "threshkit/verify.hpp"

using namespace threshkit;
using th::cover;
using th::fam;
using th::r;
using th::set;

TEST_CASE("cost examples") {
  CHECK(cost(Cover({0}), r(1, 3)) == 1);
  CHECK(cost(cover({{1}}), r(1, 2)) == r(1, 2));
  const CloneMap cm(GroundSet::numbered(1), 2);
  CHECK(cost(Cover({Mask{1} << cm.clone_index(0, 0), Mask{1} << cm.clone_index(0, 1)}), r(1, 4)) == r(1, 2));
  CHECK(cost(Cover(), r(1, 2)) == 0);
  CHECK_THROWS_AS(cost(cover({{1}}), r(3, 2)), Error);
  CHECK(cost_polynomial(cover({{1}, {1, 2}, {2, 3}})).coefficients() == std::vector<Rational>{0, 1, 2});
}

TEST_CASE("cover members are distinct and canonical") {
  const Cover c({set({2, 3}), set({1}), set({2, 3})});
  CHECK(c.members() == std::vector<Mask>{set({1}), set({2, 3})});
}

TEST_CASE("is_cover examples") {
  const auto f = fam(3, {{1, 2}, {1, 3}});
  CHECK(is_cover(cover({{1}}), f));
  CHECK_FALSE(is_cover(cover({{1, 2}}), f));
  CHECK(is_cover(Cover({0}), f));
  CHECK_THROWS_AS(is_cover(cover({{4}}), f), Error);
}

TEST_CASE("is_cover matches the up-set definition") {
  // F inside <G> checked over all subsets
  for (std::uint64_t s = 1; s <= 40; ++s) {
    const auto f = random_family(4, 4, s);
    const auto g = random_family(4, 3, s + 1000);
    const Cover c(g.generators());
    bool inside = true;
    for (Mask a = 0; a < 16; ++a) {
      if (contains(f, a) && !oracle::up_set_contains(g.generators(), a)) inside = false;
    }
    CHECK(is_cover(c, f) == inside);
  }
}

TEST_CASE("min_cost_cover examples") {
  const auto fork = fam(3, {{1, 2}, {1, 3}});
  const auto m = min_cost_cover(fork, r(1, 2));
  CHECK(m.cover == cover({{1}}));
  CHECK(m.cost == r(1, 2));
  CHECK(m.cost == oracle::brute_min_cost(fork.generators(), 3, r(1, 2)));
  const auto tri = fam(3, {{1, 2}, {1, 3}, {2, 3}});
  CHECK(min_cost_cover(tri, r(1, 4)).cost == r(3, 16));
  CHECK(min_cost_cover(tri, r(1, 4)).cover == cover({{1, 2}, {1, 3}, {2, 3}}));
  CHECK(min_cost_cover(fam(1, {{1}}), r(1, 3)).cover == cover({{1}}));
  CHECK_THROWS_AS(min_cost_cover(fork, r(0)), Error);
  CHECK_THROWS_AS(min_cost_cover(fork, r(1)), Error);
}

TEST_CASE("minimum cost against brute force, monotone in q") {
  const Rational grid[] = {r(1, 9), r(1, 4), r(2, 5), r(1, 2), r(3, 4), r(19, 20)};
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& f : all_families(n)) {
      if (oracle::pool(f.generators(), n).size() > 20) continue;
      Rational prev = 0;
      for (const auto& q : grid) {
        const auto m = min_cost_cover(f, q);
        CHECK(m.cost == oracle::brute_min_cost(f.generators(), n, q));
        CHECK(is_cover(m.cover, f));
        CHECK(cost(m.cover, q) == m.cost);
        CHECK(m.cost >= prev);
        prev = m.cost;
        CHECK(fractional_optimum(f, q).value <= m.cost);
        // irredundant
        for (std::size_t i = 0; i < m.cover.size(); ++i) {
          std::vector<Mask> rest = m.cover.members();
          rest.erase(rest.begin() + static_cast<long>(i));
          CHECK_FALSE(is_cover(Cover(rest), f));
        }
      }
      CHECK(min_cost_cover(f, r(99, 100)).cost > r(1, 2));
    }
  }
}

TEST_CASE("q_c examples and certificates") {
  const auto fork = q_c(fam(3, {{1, 2}, {1, 3}}));
  CHECK(fork.enclosure.is_point());
  CHECK(fork.enclosure.lo == r(1, 2));
  CHECK(fork.certificates.lower_cover == cover({{1}}));

  const auto tri = q_c(fam(3, {{1, 2}, {1, 3}, {2, 3}}));
  // 3q^2 = 1/2
  CHECK(3 * tri.enclosure.lo * tri.enclosure.lo <= r(1, 2));
  CHECK(3 * tri.enclosure.hi * tri.enclosure.hi >= r(1, 2));
  CHECK(tri.enclosure.width() <= default_width());

  const auto dict = q_c(fam(1, {{1}}));
  CHECK(dict.enclosure.is_point());
  CHECK(dict.enclosure.lo == r(1, 2));
}

TEST_CASE("q_c certificates re-validate") {
  for (std::uint64_t s = 1; s <= 40; ++s) {
    const auto f = random_family(2 + s % 4, 5, s);
    const auto res = q_c(f, r(1, 1 << 12));
    const auto& c = res.certificates;
    CHECK(is_cover(c.lower_cover, f));
    CHECK(cost(c.lower_cover, c.lower_q) == c.lower_cost);
    CHECK(c.lower_cost <= r(1, 2));
    CHECK(c.lower_q == res.enclosure.lo);
    CHECK(c.upper_q == res.enclosure.hi);
    if (!res.enclosure.is_point()) CHECK(min_cost_cover(f, c.upper_q).cost > r(1, 2));
    CHECK(res.enclosure.hi < 1);
    const auto qf = q_f(f, r(1, 1 << 12));
    CHECK(res.enclosure.lo <= qf.enclosure.hi);
  }
}

TEST_CASE("q_f examples") {
  const auto dict = q_f(fam(1, {{1}}));
  CHECK(dict.enclosure.is_point());
  CHECK(dict.enclosure.lo == r(1, 2));
  const auto fork = q_f(fam(3, {{1, 2}, {1, 3}}));
  CHECK(fork.enclosure.is_point());
  CHECK(fork.enclosure.lo == r(1, 2));
  const auto tri = q_f(fam(3, {{1, 2}, {1, 3}, {2, 3}}));
  CHECK(3 * tri.enclosure.lo * tri.enclosure.lo <= r(1, 2));
  CHECK(3 * tri.enclosure.hi * tri.enclosure.hi >= r(1, 2));
  CHECK(is_fractional_cover(tri.lower_cover, fam(3, {{1, 2}, {1, 3}, {2, 3}})));
  CHECK(cost(tri.lower_cover, tri.enclosure.lo) == tri.lower_cost);
}

TEST_CASE("fractional optimum and basis stability") {
  const auto tri = fam(3, {{1, 2}, {1, 3}, {2, 3}});
  const auto opt = fractional_optimum(tri, r(1, 4));
  CHECK(opt.value == r(3, 16));
  CHECK(is_fractional_cover(opt.cover, tri));
  CHECK(opt.value_polynomial(r(1, 4)) == opt.value);
  CHECK(basis_stable_on(opt, r(1, 5), r(3, 10)));
  for (const auto& q : {r(1, 5), r(3, 10)}) CHECK(fractional_optimum(tri, q).value == opt.value_polynomial(q));
}

TEST_CASE("enumerate cheapest covers") {
  CHECK(enumerate_cheapest_covers(fam(1, {{1}}), r(1, 3)).covers == std::vector<Cover>{cover({{1}})});
  const auto fork = enumerate_cheapest_covers(fam(3, {{1, 2}, {1, 3}}), r(1, 2));
  CHECK(fork.covers.front() == cover({{1}}));
  for (const auto& c : fork.covers) CHECK(cost(c, r(1, 2)) == fork.cost);

  const auto cl = clone_family(fam(3, {{1, 2}, {1, 3}}), 2);
  const auto res = enumerate_cheapest_covers(cl.family, r(1, 4));
  CHECK(res.cost == r(1, 2));
  CHECK_FALSE(res.truncated);
  auto lbl = [&](std::vector<std::string> ls) { return cl.map.cloned().mask_of(ls); };
  const Cover cloned({lbl({"1a"}), lbl({"1b"})});
  const Cover other({lbl({"1a"}), lbl({"1b", "2a"}), lbl({"1b", "2b"}), lbl({"1b", "3a"}), lbl({"1b", "3b"})});
  CHECK(std::find(res.covers.begin(), res.covers.end(), cloned) != res.covers.end());
  CHECK(std::find(res.covers.begin(), res.covers.end(), other) != res.covers.end());
  CHECK(std::is_sorted(res.covers.begin(), res.covers.end()));
  const auto capped = enumerate_cheapest_covers(cl.family, r(1, 4), 1);
  CHECK(capped.truncated);
  CHECK(capped.covers.size() == 1);
}

TEST_CASE("permutation groups") {
  const PermutationGroup s3(3, {{1, 0, 2}, {1, 2, 0}});
  CHECK(s3.elements().size() == 6);
  CHECK(PermutationGroup::trivial(4).elements().size() == 1);
  CHECK(PermutationGroup::apply({1, 2, 0}, set({1})) == set({2}));
  CHECK_THROWS_AS(PermutationGroup(3, {{0, 0, 1}}), Error);
  CHECK_THROWS_AS(PermutationGroup(3, {{0, 1}}), Error);
  const PermutationGroup s8(8, {{1, 0, 2, 3, 4, 5, 6, 7}, {1, 2, 3, 4, 5, 6, 7, 0}});
  CHECK_THROWS_AS(s8.elements(1000), Error);
}

TEST_CASE("symmetric cheapest covers") {
  const auto dict = symmetric_cheapest_exists(fam(1, {{1}}), PermutationGroup::trivial(1), r(1, 3));
  CHECK(dict.exists);
  CHECK(*dict.witness == cover({{1}}));

  const auto tri = fam(3, {{1, 2}, {1, 3}, {2, 3}});
  const PermutationGroup s3(3, {{1, 0, 2}, {1, 2, 0}});
  const auto t = symmetric_cheapest_exists(tri, s3, r(1, 4));
  CHECK(t.exists);
  CHECK(*t.witness == cover({{1, 2}, {1, 3}, {2, 3}}));
  // at 3/5 the optimum {1},{2,3} is not invariant and no orbit union matches it
  const auto w = symmetric_cheapest_exists(tri, s3, r(3, 5));
  CHECK_FALSE(w.exists);
  CHECK(w.optimum == r(24, 25));
  CHECK(w.symmetric_optimum == 1);

  // swap 2 <-> 3 on the fixture, compared with filtered enumeration
  const auto fork = fam(3, {{1, 2}, {1, 3}});
  const PermutationGroup swap(3, {{0, 2, 1}});
  const auto s = symmetric_cheapest_exists(fork, swap, r(1, 2));
  bool any_invariant = false;
  for (const auto& c : enumerate_cheapest_covers(fork, r(1, 2)).covers) {
    std::vector<Mask> image;
    for (Mask m : c.members()) image.push_back(PermutationGroup::apply({0, 2, 1}, m));
    if (Cover(image) == c) any_invariant = true;
  }
  CHECK(s.exists == any_invariant);
  CHECK_THROWS_AS(symmetric_cheapest_exists(fork, PermutationGroup(3, {{1, 0, 2}}), r(1, 2)), Error);
}

TEST_CASE("candidate pool") {
  const auto pool = candidate_pool(fam(3, {{1, 2}, {1, 3}}));
  CHECK(pool == std::vector<Mask>{0, set({1}), set({2}), set({3}), set({1, 2}), set({1, 3})});
  const auto big = normalize(std::vector<Mask>{low_bits(21)}, GroundSet::numbered(21));
  CHECK_THROWS_AS(candidate_pool(big), Error);
}
