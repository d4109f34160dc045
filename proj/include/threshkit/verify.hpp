#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "threshkit/clone.hpp"
#include "threshkit/cover_opt.hpp"
#include "threshkit/interval.hpp"
#include "threshkit/threshold.hpp"

namespace threshkit {

enum class Verdict { Holds, Inconclusive, Violated, Skipped };

std::string_view to_string(Verdict v);

/// One inequality `lhs <= rhs` between enclosed quantities.
struct BoundCheck {
  std::string name;
  Verdict verdict = Verdict::Inconclusive;
  Interval lhs;
  Interval rhs;
  /// Set when the verdict needed an exact algebraic comparison.
  bool exact = false;
  std::string note;
};

struct BoundReport {
  std::string family_id;
  int l = 0;
  Rational K;
  Rational width;           // final enclosure width
  unsigned refinements = 0; // extra rounds spent on inconclusive checks
  Enclosure p_c, q_c, q_f;
  std::vector<BoundCheck> checks;
  /// Whether 2^(-1/l) lies strictly below the right side of the exponential bound.
  std::optional<bool> trivial_tighter_than_exponential;

  bool any_violated() const;
  bool all_resolved() const;  // nothing left inconclusive
};

/// Evaluates, with l = l(F) and enclosures at `width`:
///   polynomial-lower   q_c <= p_c                          (l >= 2)
///   polynomial-upper   p_c <= K q_c log2 l                 (l >= 2)
///   power              p_c <= 1 - (1 - K q_c)^(log2 l)     (l >= 2, q_c <= 1/K)
///   exponential        p_c <= 1 - e^(-K q_c log2 l)        (l >= 2)
///   trivial            p_c <= 2^(-1/l)
///   qc<=qf, qf<=pc, qc<=pc
/// Inconclusive checks trigger recomputation at width/16, at most `max_refinements` times.
BoundReport check_bounds(const Family& family, const Rational& K = Rational(16),
                         const Rational& width = default_width(), unsigned max_refinements = 6);

struct Residual {
  std::string name;
  Interval value;
  Verdict verdict = Verdict::Skipped;  // Holds iff the interval contains 0
};

struct ScalingReport {
  std::string family_id;
  std::size_t k = 1;
  Enclosure qc_base, qc_clone, qf_base, qf_clone, pc_base, pc_clone;
  std::vector<Residual> residuals;

  bool any_violated() const;
};

/// Residual intervals for q_c(F_k) - q_c(F)/k, q_f(F_k) - q_f(F)/k and
/// p_c(F) - (1 - (1 - p_c(F_k))^k).
ScalingReport check_clone_scaling(const Family& family, std::size_t k, const Rational& width = default_width(),
                                  bool include_qf = true);

struct NonClonedSearch {
  std::optional<Cover> witness;
  Rational cost;             // minimum cost of F_k at q
  std::size_t optima = 0;    // optima examined
  bool truncated = false;    // more optima than `limit`; absence of a witness is then inconclusive
};

/// A cheapest cover of F_k at q that is not the clone of a base cover.
NonClonedSearch find_noncloned_cheapest(const Family& family, std::size_t k, const Rational& q, std::size_t limit = 1000);

/// Deterministic across platforms: a 64-bit Mersenne twister with an explicit
/// rejection sampler. Draws 1..max_generators distinct nonempty subsets.
Family random_family(std::size_t n, std::size_t max_generators, std::uint64_t seed);

/// Every non-trivial increasing family on ground {1..n}, n <= 5.
std::vector<Family> all_families(std::size_t n);

struct SymmetryCounterexample {
  Family family;
  Rational q;
  Rational optimum;
  Rational symmetric_optimum;
};

/// Draws group-invariant families (orbit closures of random generators) and
/// checks for a cheapest symmetric cover at the q_c certificate points and at
/// q in {1/10, ..., 9/10}. Returns every (family, q) without one.
std::vector<SymmetryCounterexample> falsify_symmetry(std::size_t n, const PermutationGroup& group, std::size_t trials,
                                                     std::uint64_t seed);

/// Short identifier such as "n3:{1,2}|{1,3}".
std::string family_id(const Family& family);

}  // namespace threshkit
