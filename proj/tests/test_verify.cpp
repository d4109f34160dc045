#include <doctest.h>

#include "helpers.hpp"
#include "threshkit/verify.hpp"

using namespace threshkit;
using th::fam;
using th::r;

namespace {
const BoundCheck& check(const BoundReport& rep, const std::string& name) {
  for (const auto& c : rep.checks) {
    if (c.name == name) return c;
  }
  FAIL("missing check " << name);
  return rep.checks.front();
}
}  // namespace

TEST_CASE("bound suite on the fixture") {
  const auto rep = check_bounds(fam(3, {{1, 2}, {1, 3}}));
  CHECK(rep.l == 2);
  CHECK_FALSE(rep.any_violated());
  CHECK(rep.all_resolved());
  for (const auto& c : rep.checks) {
    CHECK_MESSAGE((c.verdict == Verdict::Holds || c.verdict == Verdict::Skipped), c.name);
  }
  const auto& expo = check(rep, "exponential");
  CHECK(expo.verdict == Verdict::Holds);
  // 1 - e^-8
  CHECK(expo.rhs.lo > r(99966, 100000));
  CHECK(expo.rhs.hi < r(99967, 100000));
  CHECK(check(rep, "power").verdict == Verdict::Skipped);  // q_c = 1/2 > 1/16
  CHECK(check(rep, "trivial").verdict == Verdict::Holds);
  REQUIRE(rep.trivial_tighter_than_exponential.has_value());
  CHECK(*rep.trivial_tighter_than_exponential);
}

TEST_CASE("dictator: only the trivial bound applies, with equality") {
  const auto rep = check_bounds(fam(1, {{1}}));
  for (const char* name : {"polynomial-lower", "polynomial-upper", "power", "exponential"}) {
    CHECK(check(rep, name).verdict == Verdict::Skipped);
  }
  const auto& t = check(rep, "trivial");
  CHECK(t.verdict == Verdict::Holds);
  CHECK(t.lhs.is_point());
  CHECK(t.lhs.lo == r(1, 2));
  CHECK(t.rhs.contains(r(1, 2)));
}

TEST_CASE("triangle needs the exact comparison for q_c <= q_f") {
  const auto rep = check_bounds(fam(3, {{1, 2}, {1, 3}, {2, 3}}));
  const auto& c = check(rep, "qc<=qf");
  CHECK(c.verdict == Verdict::Holds);
  CHECK(c.exact);
}

TEST_CASE("power bound is checked for small q_c") {
  // six disjoint pairs
  std::vector<Mask> gens;
  for (int i = 0; i < 6; ++i) gens.push_back(Mask{3} << (2 * i));
  const auto f = normalize(gens, GroundSet::numbered(12));
  const auto rep = check_bounds(f);
  CHECK_FALSE(rep.any_violated());
  const bool small = rep.q_c.hi <= r(1, 16);
  CHECK(small == (check(rep, "power").verdict != Verdict::Skipped));
}

TEST_CASE("bounds hold on every family with n <= 3") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& f : all_families(n)) {
      const auto coarse = check_bounds(f, r(16), r(1, 1 << 10));
      const auto fine = check_bounds(f, r(16), r(1, 1 << 20));
      CHECK_FALSE(fine.any_violated());
      CHECK(fine.all_resolved());
      // refinement never loses a verdict
      for (std::size_t i = 0; i < coarse.checks.size(); ++i) {
        if (coarse.checks[i].verdict == Verdict::Holds) CHECK(fine.checks[i].verdict == Verdict::Holds);
      }
    }
  }
}

TEST_CASE("clone scaling examples") {
  const auto fork = check_clone_scaling(fam(3, {{1, 2}, {1, 3}}), 2);
  CHECK(fork.qc_clone.is_point());
  CHECK(fork.qc_clone.lo == r(1, 4));
  CHECK_FALSE(fork.any_violated());
  for (const auto& x : fork.residuals) {
    if (x.name != "pc(F)-(1-(1-pc(F_k))^k)") {
      CHECK(x.value.is_point());
      CHECK(x.value.lo == 0);
    }
  }
  const auto dict = check_clone_scaling(fam(1, {{1}}), 3);
  CHECK(dict.qc_clone.lo == r(1, 6));
  CHECK(dict.qc_clone.is_point());
  const auto ident = check_clone_scaling(fam(3, {{1, 2}, {2, 3}}), 1);
  for (const auto& x : ident.residuals) CHECK(x.value.contains(0));
  CHECK(ident.qc_clone.lo == ident.qc_base.lo);
}

TEST_CASE("non-cloned cheapest covers") {
  const auto fork = fam(3, {{1, 2}, {1, 3}});
  const auto w = find_noncloned_cheapest(fork, 2, r(1, 4));
  REQUIRE(w.witness.has_value());
  const auto cl = clone_family(fork, 2);
  CHECK(is_cover(*w.witness, cl.family));
  CHECK(cost(*w.witness, r(1, 4)) == r(1, 2));
  CHECK_FALSE(is_cloned_cover(*w.witness, cl.map).has_value());
  // k = 1: every cover is its own clone
  CHECK_FALSE(find_noncloned_cheapest(fork, 1, r(1, 4)).witness.has_value());
  const auto d = find_noncloned_cheapest(fam(1, {{1}}), 2, r(1, 4));
  CHECK_FALSE(d.witness.has_value());  // {{1a},{1b}} is the only cover of F_2
  CHECK_FALSE(d.truncated);
}

TEST_CASE("random families are deterministic and normalized") {
  CHECK(random_family(3, 2, 1) == random_family(3, 2, 1));
  for (std::uint64_t s = 0; s < 20; ++s) CHECK(random_family(1, 1, s).generators() == std::vector<Mask>{1});
  const auto f = random_family(4, 3, 7);
  CHECK(normalize(f.generators(), f.ground()) == f);
  CHECK(all_families(1).size() == 1);
  CHECK(all_families(2).size() == 4);
  CHECK(all_families(3).size() == 18);
  CHECK(all_families(4).size() == 166);
}

TEST_CASE("symmetry falsifier") {
  const PermutationGroup s3(3, {{1, 0, 2}, {1, 2, 0}});
  CHECK(falsify_symmetry(3, s3, 0, 1).empty());
  CHECK(falsify_symmetry(3, PermutationGroup::trivial(3), 50, 1).empty());
  const auto found = falsify_symmetry(3, s3, 100, 5);
  bool triangle = false;
  for (const auto& c : found) {
    CHECK(c.symmetric_optimum > c.optimum);
    if (c.family == fam(3, {{1, 2}, {1, 3}, {2, 3}}) && c.q == r(3, 5)) triangle = true;
  }
  CHECK(triangle);
  const PermutationGroup swap(3, {{0, 2, 1}});
  for (const auto& c : falsify_symmetry(3, swap, 100, 5)) CHECK(c.symmetric_optimum > c.optimum);
}

TEST_CASE("family ids") { CHECK(family_id(fam(3, {{1, 3}, {1, 2}})) == "n3:{1,2}|{1,3}"); }
