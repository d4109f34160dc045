#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "threshkit/rational.hpp"
#include "threshkit/set_system.hpp"

namespace threshkit::search {

/// Exact weighted set cover by branch and bound.
///
/// Elements are abstract indices 0..elements-1 (the generators of a family).
/// A candidate has a positive exact weight, the elements it covers, and the
/// subset masks it contributes to a cover: one mask for a plain candidate,
/// a whole orbit for symmetric search.
///
/// Branching picks the uncovered element with the fewest live candidates and
/// tries each of them in turn, excluding earlier siblings, so every
/// irredundant cover is reached exactly once. The node bound is
/// cost so far + sum over uncovered e of min_{c covers e} w(c) / |cov(c) ∩ U|,
/// evaluated in 62-bit fixed point with a proven error margin and
/// re-evaluated in exact rationals whenever the margin cannot decide a
/// comparison. At the root the exact covering LP may tighten the bound.
struct Candidate {
  Rational weight;
  std::vector<std::size_t> covers;
  std::vector<Mask> members;
};

enum class Mode {
  /// Optimal value with some optimal cover.
  Minimize,
  /// Optimal cover that is least under (cost, member count, canonical member list).
  Canonical,
  /// Sign of (optimum - threshold), stopping at the first cover strictly below it.
  Decide,
  /// Every optimal cover, up to a limit.
  EnumerateAll,
};

struct Options {
  Mode mode = Mode::Minimize;
  Rational threshold = Rational(1, 2);  // Decide only
  std::size_t limit = 1000;             // EnumerateAll only
  /// Root LP bound is used when the reduced candidate pool is at most this large.
  std::size_t lp_pool_limit = 4096;
};

struct Solution {
  Rational cost;
  std::vector<std::size_t> chosen;  // candidate indices, ascending
  std::vector<Mask> members;        // canonical order
};

struct Result {
  /// Minimize/Canonical/EnumerateAll: the optimum. Decide: cost of the witness, if any.
  std::optional<Rational> optimum;
  /// Decide: sign of (optimum - threshold); +1 when no cover reaches the threshold.
  int decision = 0;
  std::vector<Solution> solutions;
  bool truncated = false;
  std::uint64_t nodes = 0;
  std::uint64_t exact_bound_evaluations = 0;
};

/// Throws InvalidArgument when an element has no candidate or a weight is not positive.
Result solve(std::size_t elements, const std::vector<Candidate>& candidates, const Options& options);

/// (size, then mask_less lexicographic) order on canonical member lists.
bool cover_less(const std::vector<Mask>& a, const std::vector<Mask>& b);

}  // namespace threshkit::search
