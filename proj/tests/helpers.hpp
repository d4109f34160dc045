#pragma once

#include <initializer_list>
#include <vector>

#include "threshkit/cover_opt.hpp"
#include "threshkit/rational.hpp"
#include "threshkit/set_system.hpp"

namespace th {

using threshkit::Mask;

/// Mask from 1-based element numbers.
inline Mask set(std::initializer_list<int> elems) {
  Mask m = 0;
  for (int e : elems) m |= Mask{1} << (e - 1);
  return m;
}

inline threshkit::Family fam(std::size_t n, std::initializer_list<std::initializer_list<int>> gens) {
  std::vector<Mask> raw;
  for (auto g : gens) raw.push_back(set(g));
  return threshkit::normalize(raw, threshkit::GroundSet::numbered(n));
}

inline threshkit::Cover cover(std::initializer_list<std::initializer_list<int>> members) {
  std::vector<Mask> raw;
  for (auto g : members) raw.push_back(set(g));
  return threshkit::Cover(raw);
}

inline threshkit::Rational r(long num, long den = 1) { return threshkit::make_rational(num, den); }

}  // namespace th
