#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "threshkit/polynomial.hpp"
#include "threshkit/rational.hpp"
#include "threshkit/set_system.hpp"
#include "threshkit/threshold.hpp"

namespace threshkit {

/// A finite collection of distinct subsets, kept in canonical order.
class Cover {
 public:
  Cover() = default;
  explicit Cover(std::vector<Mask> members);

  const std::vector<Mask>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  /// Fewest members first, then canonical member order.
  friend bool operator<(const Cover& a, const Cover& b);
  friend bool operator==(const Cover& a, const Cover& b) { return a.members_ == b.members_; }

 private:
  std::vector<Mask> members_;
};

/// Nonnegative rational weights on subsets (zero weights are not stored).
struct FractionalCover {
  std::map<Mask, Rational, MaskLess> weights;
};

/// sum over members S of q^|S|. Throws InvalidProbability unless 0 <= q <= 1.
Rational cost(const Cover& cover, const Rational& q);
Rational cost(const FractionalCover& cover, const Rational& q);

/// Coefficient j is the number of members of size j.
Polynomial cost_polynomial(const Cover& cover);
Polynomial cost_polynomial(const FractionalCover& cover);

/// F ⊆ <G>: every generator contains some member. Throws GroundMismatch if a
/// member uses indices outside the family's ground set.
bool is_cover(const Cover& cover, const Family& family);

/// Every generator M receives total weight >= 1 from members S ⊆ M.
bool is_fractional_cover(const FractionalCover& cover, const Family& family);

/// Every subset of some generator, the empty set included, in canonical order.
/// A cover member below no generator covers nothing, so optimal covers draw
/// only from this pool. Throws CapExceeded past 2^20 candidates.
std::vector<Mask> candidate_pool(const Family& family);

struct MinCover {
  Cover cover;
  Rational cost;
};

/// Exact minimum-cost cover at 0 < q < 1. Among optimal covers the result
/// has the fewest members, then comes first in canonical order.
MinCover min_cost_cover(const Family& family, const Rational& q);

/// Sign of (minimum q-cost - 1/2), with a cover achieving cost <= 1/2 when one exists.
struct CheapDecision {
  int sign = 1;
  std::optional<Cover> witness;
};
CheapDecision decide_cheap(const Family& family, const Rational& q);

struct QcCertificates {
  Rational lower_q;          // some cover is lower_q-cheap ...
  Cover lower_cover;         // ... namely this one
  Rational lower_cost;       // its cost at lower_q (<= 1/2)
  Rational upper_q;          // exhaustive search: the minimum cost at upper_q ...
  std::string upper_proof;   // ... exceeds 1/2 ("min-cost>1/2"), or equals it at a point enclosure
};

struct QcResult {
  Enclosure enclosure;
  QcCertificates certificates;
};

/// Enclosure of q_c, the supremum of q admitting a q-cheap cover.
QcResult q_c(const Family& family, const Rational& width = default_width());

/// Exact fractional optimum at q, from the exact simplex.
struct FractionalOptimum {
  Rational value;
  FractionalCover cover;
  /// sum_S w(S) q^|S| for the optimal vertex; equals the LP optimum wherever
  /// the optimal basis stays feasible.
  Polynomial value_polynomial;
  /// Basic-variable values as polynomials in q.
  std::vector<Polynomial> basic_values;
};
FractionalOptimum fractional_optimum(const Family& family, const Rational& q);

/// True iff the optimal basis of `opt` remains optimal for every q in [a, b],
/// i.e. the LP optimum equals opt.value_polynomial on that interval.
bool basis_stable_on(const FractionalOptimum& opt, const Rational& a, const Rational& b);

struct QfResult {
  Enclosure enclosure;
  FractionalCover lower_cover;  // optimal fractional cover at enclosure.lo
  Rational lower_cost;
};

/// Enclosure of q_f, the supremum of q admitting a fractional cover of cost <= 1/2.
QfResult q_f(const Family& family, const Rational& width = default_width());

struct CheapestCovers {
  Rational cost;
  std::vector<Cover> covers;  // canonical order
  bool truncated = false;     // more optima exist than `limit`
};

/// Every minimum-cost cover at q (all are irredundant), up to `limit`.
CheapestCovers enumerate_cheapest_covers(const Family& family, const Rational& q, std::size_t limit = 1000);

/// A permutation group on ground-set indices, given by generators.
class PermutationGroup {
 public:
  using Permutation = std::vector<std::size_t>;

  /// Throws InvalidArgument unless each generator is a bijection of 0..degree-1.
  PermutationGroup(std::size_t degree, std::vector<Permutation> generators);
  static PermutationGroup trivial(std::size_t degree);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }

  /// All group elements by closure. Throws CapExceeded past `cap` elements.
  std::vector<Permutation> elements(std::size_t cap = 100000) const;

  static Mask apply(const Permutation& perm, Mask m);

 private:
  std::size_t degree_;
  std::vector<Permutation> generators_;
};

/// Throws NotSymmetric unless every generator maps the family's generators onto themselves.
void require_stabilizes(const Family& family, const PermutationGroup& group);

struct SymmetryResult {
  bool exists = false;
  std::optional<Cover> witness;  // a cheapest cover that is a union of orbits
  Rational optimum;              // unrestricted minimum cost
  Rational symmetric_optimum;    // minimum over unions of orbits
};

/// Whether some q-cheapest cover is invariant under the group.
SymmetryResult symmetric_cheapest_exists(const Family& family, const PermutationGroup& group, const Rational& q);

}  // namespace threshkit
