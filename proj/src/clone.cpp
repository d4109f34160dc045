#include "threshkit/clone.hpp"

#include <algorithm>

#include "threshkit/error.hpp"

namespace threshkit {

namespace {

constexpr std::size_t kMaxMaterialized = std::size_t{1} << 20;

std::string copy_suffix(std::size_t copy, std::size_t k) {
  if (k <= 26) return std::string(1, static_cast<char>('a' + copy));
  return "#" + std::to_string(copy + 1);
}

GroundSet make_cloned(const GroundSet& base, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::FibreError, "clone count k must be at least 1");
  if (base.size() * k > kMaxGroundSize) {
    throw Error(ErrorKind::CapExceeded, "cloned ground set would have " + std::to_string(base.size() * k) +
                                            " elements; at most " + std::to_string(kMaxGroundSize) + " are supported");
  }
  std::vector<std::string> labels;
  labels.reserve(base.size() * k);
  for (std::size_t x = 0; x < base.size(); ++x) {
    for (std::size_t i = 0; i < k; ++i) labels.push_back(base.label(x) + copy_suffix(i, k));
  }
  try {
    return GroundSet(std::move(labels));
  } catch (const Error& e) {
    throw Error(ErrorKind::FibreError, std::string("cloned labels are not distinct: ") + e.what());
  }
}

std::size_t checked_power(std::size_t k, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > kMaxMaterialized / k) return kMaxMaterialized + 1;
    r *= k;
  }
  return r;
}

}  // namespace

CloneMap::CloneMap(GroundSet base, std::size_t k) : base_(std::move(base)), k_(k), cloned_(make_cloned(base_, k)) {}

Mask CloneMap::fibre(std::size_t x) const { return low_bits(k_) << (x * k_); }

Mask CloneMap::project(Mask cloned) const {
  Mask out = 0;
  for (; cloned; cloned &= cloned - 1) out |= Mask{1} << base_index(static_cast<std::size_t>(std::countr_zero(cloned)));
  return out;
}

bool CloneMap::duplicate_free(Mask cloned) const { return mask_size(cloned) == mask_size(project(cloned)); }

Mask CopySelection::mask(const CloneMap& cm) const {
  Mask out = 0;
  for (std::size_t x = 0; x < copy.size(); ++x) out |= Mask{1} << cm.clone_index(x, copy[x]);
  return out;
}

std::vector<Mask> psi(Mask s, const CloneMap& cm) {
  if (!cm.base().holds(s)) throw Error(ErrorKind::FibreError, "subset is not over the base ground set");
  std::vector<Mask> out{0};
  for (std::size_t x : mask_elements(s)) {
    std::vector<Mask> next;
    next.reserve(out.size() * cm.k());
    for (Mask m : out) {
      for (std::size_t i = 0; i < cm.k(); ++i) next.push_back(m | (Mask{1} << cm.clone_index(x, i)));
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), mask_less);
  return out;
}

ClonedFamily clone_family(const Family& family, std::size_t k) {
  CloneMap cm(family.ground(), k);
  std::size_t total = 0;
  for (Mask g : family.generators()) {
    total += checked_power(k, mask_size(g));
    if (total > kMaxMaterialized) throw Error(ErrorKind::CapExceeded, "cloned family would exceed 2^20 generators");
  }
  std::vector<Mask> gens;
  gens.reserve(total);
  for (Mask g : family.generators()) {
    auto pre = psi(g, cm);
    gens.insert(gens.end(), pre.begin(), pre.end());
  }
  return {normalize(gens, cm.cloned()), cm};
}

Cover project_cover(const Cover& cloned, const CloneMap& cm) {
  std::vector<Mask> out;
  out.reserve(cloned.size());
  for (Mask m : cloned.members()) {
    if (!cm.cloned().holds(m)) throw Error(ErrorKind::GroundMismatch, "member lies outside the cloned ground set");
    if (!cm.duplicate_free(m)) {
      throw Error(ErrorKind::DuplicateInFibre, cm.cloned().render(m) + " contains two clones of one element");
    }
    out.push_back(cm.project(m));
  }
  return Cover(std::move(out));
}

Cover clone_cover(const Cover& base, const CloneMap& cm) {
  std::size_t total = 0;
  for (Mask m : base.members()) {
    total += checked_power(cm.k(), mask_size(m));
    if (total > kMaxMaterialized) throw Error(ErrorKind::CapExceeded, "cloned cover would exceed 2^20 members");
  }
  std::vector<Mask> out;
  out.reserve(total);
  for (Mask m : base.members()) {
    auto pre = psi(m, cm);
    out.insert(out.end(), pre.begin(), pre.end());
  }
  return Cover(std::move(out));
}

Extraction extract_base_cover(const Cover& cloned, const Family& family, const CloneMap& cm, const Rational& q,
                              ExtractionMethod method) {
  if (!(family.ground() == cm.base())) throw Error(ErrorKind::GroundMismatch, "family is not over the clone map's base");
  const Rational kq = q * static_cast<unsigned long>(cm.k());
  if (q < 0) throw Error(ErrorKind::InvalidProbability, "q must be nonnegative");
  if (kq > 1) throw Error(ErrorKind::ProbabilityOverflow, "k*q = " + to_string(kq) + " exceeds 1");
  const auto cloned_family = clone_family(family, cm.k());
  if (!is_cover(cloned, cloned_family.family)) throw Error(ErrorKind::NotACover, "H does not cover the cloned family");

  const std::size_t n = cm.base().size();
  const std::size_t k = cm.k();
  // Only duplicate-free members can lie inside a selection.
  std::vector<Mask> usable;
  for (Mask m : cloned.members()) {
    if (cm.duplicate_free(m)) usable.push_back(m);
  }
  std::vector<Rational> kq_pow(n + 1);
  kq_pow[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) kq_pow[i] = kq_pow[i - 1] * kq;

  Extraction out;
  out.budget = cost(cloned, q);
  out.selection.copy.assign(n, 0);

  if (method == ExtractionMethod::Exhaustive) {
    if (n > 8) throw Error(ErrorKind::CapExceeded, "exhaustive extraction is limited to 8 base elements");
    std::vector<std::size_t> choice(n, 0);
    std::optional<Rational> best;
    for (;;) {
      Mask sel = CopySelection{choice}.mask(cm);
      Rational c = 0;
      for (Mask m : usable) {
        if (is_subset(m, sel)) c += kq_pow[mask_size(m)];
      }
      if (!best || c < *best) {
        best = c;
        out.selection.copy = choice;
      }
      std::size_t x = 0;
      while (x < n && ++choice[x] == k) choice[x++] = 0;
      if (x == n) break;
    }
  } else {
    // Expected projected cost when the open fibres are chosen uniformly:
    // sum over members consistent with the fixed fibres of (kq)^|S| k^-(open elements of S).
    const Rational inv_k = Rational(1) / static_cast<unsigned long>(k);
    std::vector<Rational> inv_k_pow(n + 1);
    inv_k_pow[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) inv_k_pow[i] = inv_k_pow[i - 1] * inv_k;
    Mask fixed_fibres = 0;  // over cloned indices
    Mask chosen = 0;
    auto expectation = [&](Mask fixed, Mask picks) {
      Rational e = 0;
      for (Mask m : usable) {
        if ((m & fixed) & ~picks) continue;
        e += kq_pow[mask_size(m)] * inv_k_pow[mask_size(m & ~fixed)];
      }
      return e;
    };
    for (std::size_t x = 0; x < n; ++x) {
      const Mask fx = fixed_fibres | cm.fibre(x);
      std::optional<Rational> best;
      for (std::size_t i = 0; i < k; ++i) {
        Rational e = expectation(fx, chosen | (Mask{1} << cm.clone_index(x, i)));
        if (!best || e < *best) {
          best = e;
          out.selection.copy[x] = i;
        }
      }
      fixed_fibres = fx;
      chosen |= Mask{1} << cm.clone_index(x, out.selection.copy[x]);
    }
  }

  const Mask sel = out.selection.mask(cm);
  std::vector<Mask> inside;
  for (Mask m : usable) {
    if (is_subset(m, sel)) inside.push_back(m);
  }
  out.cover = project_cover(Cover(std::move(inside)), cm);
  out.cost = cost(out.cover, kq);
  return out;
}

std::optional<Cover> is_cloned_cover(const Cover& cloned, const CloneMap& cm) {
  std::vector<Mask> base;
  base.reserve(cloned.size());
  for (Mask m : cloned.members()) {
    if (!cm.cloned().holds(m) || !cm.duplicate_free(m)) return std::nullopt;
    base.push_back(cm.project(m));
  }
  Cover g(std::move(base));
  std::size_t expected = 0;
  for (Mask m : g.members()) {
    expected += checked_power(cm.k(), mask_size(m));
    if (expected > cloned.size()) return std::nullopt;
  }
  if (expected != cloned.size()) return std::nullopt;
  if (!(clone_cover(g, cm) == cloned)) return std::nullopt;
  return g;
}

}  // namespace threshkit
