#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "threshkit/cover_opt.hpp"
#include "threshkit/rational.hpp"
#include "threshkit/set_system.hpp"

namespace threshkit {

/// Ground set X x [k] over a base X. Clone (x, i) has index x*k + i and is
/// labelled with the base label followed by a copy letter: "1a", "1b", ...
/// (or "1#27" style suffixes beyond 26 copies).
class CloneMap {
 public:
  /// Throws FibreError for k == 0, CapExceeded when n*k exceeds 64.
  CloneMap(GroundSet base, std::size_t k);

  const GroundSet& base() const { return base_; }
  const GroundSet& cloned() const { return cloned_; }
  std::size_t k() const { return k_; }

  std::size_t clone_index(std::size_t x, std::size_t copy) const { return x * k_ + copy; }
  std::size_t base_index(std::size_t j) const { return j / k_; }
  std::size_t copy_index(std::size_t j) const { return j % k_; }

  /// The k clones of base element x.
  Mask fibre(std::size_t x) const;
  /// Image under the projection.
  Mask project(Mask cloned) const;
  /// At most one element per fibre.
  bool duplicate_free(Mask cloned) const;

  friend bool operator==(const CloneMap& a, const CloneMap& b) { return a.base_ == b.base_ && a.k_ == b.k_; }

 private:
  GroundSet base_;
  std::size_t k_;
  GroundSet cloned_;
};

/// Minimal pre-images of a base subset: one clone per element, k^|S| masks in
/// canonical order. Throws FibreError if S is not over the base ground set.
std::vector<Mask> psi(Mask s, const CloneMap& cm);

struct ClonedFamily {
  Family family;
  CloneMap map;
};

/// Generators of F_k are the minimal pre-images of F's generators (an
/// antichain again, since pre-images of incomparable sets are incomparable).
/// Throws CapExceeded past 2^20 generators.
ClonedFamily clone_family(const Family& family, std::size_t k);

/// Member-wise projection. Throws DuplicateInFibre if a member meets a fibre twice.
Cover project_cover(const Cover& cloned, const CloneMap& cm);

/// Union of the minimal pre-images of every member. Throws CapExceeded past 2^20 members.
Cover clone_cover(const Cover& base, const CloneMap& cm);

/// X': one clone per base element.
struct CopySelection {
  std::vector<std::size_t> copy;  // per base element, in 0..k-1

  Mask mask(const CloneMap& cm) const;
  friend bool operator==(const CopySelection&, const CopySelection&) = default;
};

struct Extraction {
  Cover cover;              // projection of the members of H inside X'
  CopySelection selection;
  Rational cost;            // cost of `cover` at k*q
  Rational budget;          // cost of H at q
};

enum class ExtractionMethod {
  /// Conditional expectations fibre by fibre.
  Derandomized,
  /// Scan all k^n selections for the cheapest projection (n <= 8).
  Exhaustive,
};

/// Picks X' with cost_{kq}(pi(H ∩ P(X'))) <= cost_q(H). Throws GroundMismatch
/// if the family is not over the map's base, NotACover if H does not cover
/// F_k, ProbabilityOverflow if k*q > 1, CapExceeded for an exhaustive scan
/// with n > 8.
Extraction extract_base_cover(const Cover& cloned, const Family& family, const CloneMap& cm, const Rational& q,
                              ExtractionMethod method = ExtractionMethod::Derandomized);

/// The base cover G with clone_cover(G) == H, if there is one.
std::optional<Cover> is_cloned_cover(const Cover& cloned, const CloneMap& cm);

}  // namespace threshkit
