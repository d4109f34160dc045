#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "threshkit/cover_search.hpp"
#include "threshkit/error.hpp"

using namespace threshkit;
using namespace threshkit::search;
using th::r;

namespace {

struct Instance {
  std::size_t elements;
  std::vector<Candidate> cands;
};

Instance random_instance(std::mt19937_64& gen) {
  Instance in;
  in.elements = 1 + oracle::draw(gen, 6);
  const std::size_t count = 1 + oracle::draw(gen, 10);
  for (std::size_t c = 0; c < count; ++c) {
    Candidate cand;
    cand.weight = th::r(1 + static_cast<long>(oracle::draw(gen, 12)), 1 + static_cast<long>(oracle::draw(gen, 6)));
    for (std::size_t e = 0; e < in.elements; ++e) {
      if (oracle::draw(gen, 3) == 0) cand.covers.push_back(e);
    }
    cand.members = {Mask{1} << c};
    in.cands.push_back(cand);
  }
  // make every element coverable
  for (std::size_t e = 0; e < in.elements; ++e) {
    Candidate single;
    single.weight = 3;
    single.covers = {e};
    single.members = {Mask{1} << (in.cands.size())};
    in.cands.push_back(single);
  }
  return in;
}

// optimum and number of optimal subsets by brute force
std::pair<Rational, std::size_t> brute(const Instance& in) {
  std::optional<Rational> best;
  std::size_t ties = 0;
  const std::size_t n = in.cands.size();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    std::vector<bool> hit(in.elements, false);
    Rational w = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (!((s >> c) & 1)) continue;
      w += in.cands[c].weight;
      for (auto e : in.cands[c].covers) hit[e] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) continue;
    if (!best || w < *best) {
      best = w;
      ties = 1;
    } else if (w == *best) {
      ++ties;
    }
  }
  return {*best, ties};
}

}  // namespace

TEST_CASE("every mode agrees with brute force") {
  std::mt19937_64 gen(11);
  for (int t = 0; t < 150; ++t) {
    const auto in = random_instance(gen);
    const auto [best, ties] = brute(in);
    Options o;
    CHECK(*solve(in.elements, in.cands, o).optimum == best);
    o.mode = Mode::Canonical;
    const auto canon = solve(in.elements, in.cands, o);
    CHECK(*canon.optimum == best);
    REQUIRE(canon.solutions.size() == 1);
    CHECK(canon.solutions[0].cost == best);
    o.mode = Mode::EnumerateAll;
    const auto all = solve(in.elements, in.cands, o);
    CHECK(*all.optimum == best);
    // positive weights: every optimum is irredundant, so all are listed
    CHECK(all.solutions.size() == ties);
    o.mode = Mode::Decide;
    o.threshold = best;
    CHECK(solve(in.elements, in.cands, o).decision == 0);
    o.threshold = best + r(1, 100);
    CHECK(solve(in.elements, in.cands, o).decision == -1);
    o.threshold = best - r(1, 100);
    CHECK(solve(in.elements, in.cands, o).decision == 1);
    o.mode = Mode::Minimize;
    o.lp_pool_limit = 0;
    CHECK(*solve(in.elements, in.cands, o).optimum == best);
  }
}

TEST_CASE("enumeration limit") {
  std::vector<Candidate> cands;
  for (int i = 0; i < 4; ++i) cands.push_back({r(1), {0}, {Mask{1} << i}});
  Options o;
  o.mode = Mode::EnumerateAll;
  o.limit = 2;
  const auto res = solve(1, cands, o);
  CHECK(res.truncated);
  CHECK(res.solutions.size() == 2);
}

TEST_CASE("invalid instances") {
  Options o;
  CHECK_THROWS_AS(solve(2, {{r(1), {0}, {1}}}, o), Error);
  CHECK_THROWS_AS(solve(1, {{r(0), {0}, {1}}}, o), Error);
}
