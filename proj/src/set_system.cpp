#include "threshkit/set_system.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_set>

#include "threshkit/error.hpp"

namespace threshkit {

std::size_t enumeration_cap() {
  if (const char* env = std::getenv("THRESHKIT_ENUM_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 40) return static_cast<std::size_t>(v);
  }
  return kDefaultEnumerationCap;
}

std::vector<std::size_t> mask_elements(Mask m) {
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(std::popcount(m)));
  while (m) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error(ErrorKind::EmptyInput, "ground set has no elements");
  if (labels_.size() > kMaxGroundSize) {
    throw Error(ErrorKind::CapExceeded, "ground set of " + std::to_string(labels_.size()) +
                                            " elements exceeds the 64-element mask width");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw Error(ErrorKind::InvalidArgument, "empty element label");
    if (!index_.emplace(labels_[i], i).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate element label '" + labels_[i] + "'");
    }
  }
}

GroundSet GroundSet::numbered(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return GroundSet(std::move(labels));
}

std::optional<std::size_t> GroundSet::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Mask GroundSet::mask_of(const std::vector<std::string>& labels) const {
  Mask m = 0;
  for (const auto& l : labels) {
    auto idx = index_of(l);
    if (!idx) throw Error(ErrorKind::ForeignElement, "element '" + l + "' is not in the ground set");
    m |= Mask{1} << *idx;
  }
  return m;
}

std::vector<std::string> GroundSet::labels_of(Mask m) const {
  if (!holds(m)) throw Error(ErrorKind::ForeignElement, "subset uses indices outside the ground set");
  std::vector<std::string> out;
  for (std::size_t i : mask_elements(m)) out.push_back(labels_[i]);
  return out;
}

std::string GroundSet::render(Mask m) const {
  std::string out = "{";
  bool first = true;
  for (const auto& l : labels_of(m)) {
    if (!first) out += ",";
    out += l;
    first = false;
  }
  return out + "}";
}

Mask Family::support() const {
  Mask s = 0;
  for (Mask g : generators_) s |= g;
  return s;
}

Family normalize(std::span<const Mask> raw_generators, GroundSet ground) {
  if (raw_generators.empty()) throw Error(ErrorKind::EmptyInput, "family has no generators");
  std::vector<Mask> sorted(raw_generators.begin(), raw_generators.end());
  for (Mask m : sorted) {
    if (!ground.holds(m)) throw Error(ErrorKind::ForeignElement, "generator uses indices outside the ground set");
    if (m == 0) throw Error(ErrorKind::TrivialFamily, "the empty set generates the whole power set");
  }
  std::sort(sorted.begin(), sorted.end(), mask_less);
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  // Size-sorted, so any subset of a mask appears before it.
  std::vector<Mask> minimal;
  for (Mask m : sorted) {
    bool dominated = std::any_of(minimal.begin(), minimal.end(), [m](Mask g) { return is_subset(g, m); });
    if (!dominated) minimal.push_back(m);
  }
  return Family(std::move(ground), std::move(minimal));
}

bool contains(const Family& family, Mask a) {
  if (!family.ground().holds(a)) {
    throw Error(ErrorKind::ForeignElement, "subset uses indices outside the ground set");
  }
  return std::any_of(family.generators().begin(), family.generators().end(),
                     [a](Mask g) { return is_subset(g, a); });
}

int largest_minimal_size(const Family& family) {
  int l = 0;
  for (Mask g : family.generators()) l = std::max(l, mask_size(g));
  return l;
}

namespace {

std::vector<Integer> profile_by_enumeration(const Family& family) {
  const std::size_t n = family.ground().size();
  std::vector<std::uint64_t> counts(n + 1, 0);
  const auto& gens = family.generators();
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < total; ++a) {
    for (Mask g : gens) {
      if (is_subset(g, a)) {
        ++counts[static_cast<std::size_t>(std::popcount(a))];
        break;
      }
    }
  }
  std::vector<Integer> out(n + 1);
  for (std::size_t j = 0; j <= n; ++j) out[j] = Integer(static_cast<unsigned long>(counts[j]));
  return out;
}

// |F| restricted to size j equals sum over nonempty generator subsets T of
// (-1)^{|T|+1} C(n - |U_T|, j - |U_T|), with U_T the union of T.
std::vector<Integer> profile_by_inclusion_exclusion(const Family& family) {
  const std::size_t n = family.ground().size();
  const auto& gens = family.generators();
  const std::size_t m = gens.size();
  // signed tally of unions by size
  std::vector<long long> by_union(n + 1, 0);
  std::vector<Mask> unions(std::size_t{1} << m, 0);
  for (std::size_t t = 1; t < unions.size(); ++t) {
    std::size_t low = static_cast<std::size_t>(std::countr_zero(t));
    unions[t] = unions[t & (t - 1)] | gens[low];
    int sign = (std::popcount(t) % 2 == 1) ? 1 : -1;
    by_union[static_cast<std::size_t>(std::popcount(unions[t]))] += sign;
  }
  std::vector<Integer> out(n + 1, 0);
  for (std::size_t u = 0; u <= n; ++u) {
    if (by_union[u] == 0) continue;
    Integer weight(static_cast<long>(by_union[u]));
    for (std::size_t j = u; j <= n; ++j) {
      Integer binom;
      mpz_bin_uiui(binom.get_mpz_t(), n - u, j - u);
      out[j] += weight * binom;
    }
  }
  return out;
}

}  // namespace

std::vector<Integer> size_profile(const Family& family, CountStrategy strategy) {
  const std::size_t n = family.ground().size();
  const std::size_t m = family.generators().size();
  const std::size_t cap = enumeration_cap();
  if (strategy == CountStrategy::Auto) {
    strategy = (n <= m) ? CountStrategy::Enumerate : CountStrategy::InclusionExclusion;
  }
  if (strategy == CountStrategy::Enumerate) {
    if (n > cap) {
      throw Error(ErrorKind::CapExceeded, "subset enumeration over 2^" + std::to_string(n) +
                                              " subsets exceeds the cap 2^" + std::to_string(cap));
    }
    return profile_by_enumeration(family);
  }
  if (m > cap) {
    throw Error(ErrorKind::CapExceeded, "inclusion-exclusion over 2^" + std::to_string(m) +
                                            " generator subsets exceeds the cap 2^" + std::to_string(cap));
  }
  return profile_by_inclusion_exclusion(family);
}

Integer member_count(const Family& family, CountStrategy strategy) {
  Integer total = 0;
  for (const auto& c : size_profile(family, strategy)) total += c;
  return total;
}

}  // namespace threshkit
