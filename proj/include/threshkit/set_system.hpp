#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "threshkit/rational.hpp"

namespace threshkit {

/// A subset of ground-set indices; bit i set means element i is present.
using Mask = std::uint64_t;

/// Masks are 64-bit words, so no ground set may exceed 64 elements.
inline constexpr std::size_t kMaxGroundSize = 64;
inline constexpr std::size_t kDefaultEnumerationCap = 24;

/// Exponent cap for enumeration (2^cap subsets or 2^cap generator subsets).
/// Defaults to 24 and can be overridden with THRESHKIT_ENUM_CAP.
std::size_t enumeration_cap();

inline int mask_size(Mask m) { return std::popcount(m); }
inline bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline Mask low_bits(std::size_t n) { return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1); }

/// Canonical order: by size, then lexicographically on the sorted index lists.
inline bool mask_less(Mask a, Mask b) {
  int sa = std::popcount(a), sb = std::popcount(b);
  if (sa != sb) return sa < sb;
  if (a == b) return false;
  Mask diff = a ^ b;
  return (a & (diff & (~diff + 1))) != 0;
}

struct MaskLess {
  bool operator()(Mask a, Mask b) const { return mask_less(a, b); }
};

std::vector<std::size_t> mask_elements(Mask m);

class GroundSet {
 public:
  GroundSet() = default;
  /// Labels must be distinct and nonempty; 1 <= size <= 64.
  explicit GroundSet(std::vector<std::string> labels);

  /// Ground set labelled "1".."n".
  static GroundSet numbered(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t index) const { return labels_.at(index); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(const std::string& label) const;
  Mask full_mask() const { return low_bits(labels_.size()); }
  bool holds(Mask m) const { return is_subset(m, full_mask()); }

  /// Throws ForeignElement for an unknown label.
  Mask mask_of(const std::vector<std::string>& labels) const;
  std::vector<std::string> labels_of(Mask m) const;
  /// "{1,2}" style rendering.
  std::string render(Mask m) const;

  friend bool operator==(const GroundSet& a, const GroundSet& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// A non-trivial increasing family, stored as its antichain of minimal
/// elements in canonical order. Only `normalize` constructs one.
class Family {
 public:
  const GroundSet& ground() const { return ground_; }
  const std::vector<Mask>& generators() const { return generators_; }
  /// Union of all generators.
  Mask support() const;

  friend bool operator==(const Family& a, const Family& b) {
    return a.ground_ == b.ground_ && a.generators_ == b.generators_;
  }

 private:
  friend Family normalize(std::span<const Mask> raw_generators, GroundSet ground);
  Family(GroundSet ground, std::vector<Mask> generators)
      : ground_(std::move(ground)), generators_(std::move(generators)) {}

  GroundSet ground_;
  std::vector<Mask> generators_;
};

/// Reduces raw generators to their minimal members, deduplicated and in
/// canonical order. Throws EmptyInput, TrivialFamily (an empty generator) or
/// ForeignElement.
Family normalize(std::span<const Mask> raw_generators, GroundSet ground);

/// True iff some generator is contained in `a`. Throws ForeignElement.
bool contains(const Family& family, Mask a);

/// l(F): the size of a largest minimal element.
int largest_minimal_size(const Family& family);

enum class CountStrategy { Auto, Enumerate, InclusionExclusion };

/// profile[j] = number of members of size j, for j = 0..n. Auto picks the
/// cheaper of subset enumeration (2^n) and inclusion-exclusion over the
/// generators (2^m). Throws CapExceeded if the chosen route is over the cap.
std::vector<Integer> size_profile(const Family& family, CountStrategy strategy = CountStrategy::Auto);

/// Number of members of the up-set.
Integer member_count(const Family& family, CountStrategy strategy = CountStrategy::Auto);

}  // namespace threshkit
