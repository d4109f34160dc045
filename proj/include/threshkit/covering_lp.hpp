#pragma once

#include <cstddef>
#include <vector>

#include "threshkit/polynomial.hpp"
#include "threshkit/rational.hpp"

namespace threshkit {

/// min sum_c cost[c] x[c]  s.t.  sum_{c covers e} x[c] >= 1 for every element e,  x >= 0.
struct CoveringLp {
  std::size_t elements = 0;
  std::vector<std::vector<std::size_t>> covers;  // per candidate: covered elements
  std::vector<Rational> costs;                   // per candidate, nonnegative
};

struct CoveringLpSolution {
  Rational value;
  std::vector<Rational> weights;  // primal optimum x, per candidate
  std::vector<Rational> duals;    // dual optimum y, per element
  /// Row i of the final basis inverse, indexed by candidate. The basic
  /// variable of row i equals sum_c basis_inverse[i][c] * cost[c]; the basis
  /// stays optimal for any cost vector keeping all of those nonnegative.
  std::vector<std::vector<Rational>> basis_inverse;
  std::size_t pivots = 0;
};

/// Exact rational simplex on the dual packing problem (the slack basis is
/// feasible because costs are nonnegative); Bland's rule rules out cycling.
/// Throws InvalidArgument if some element has no covering candidate.
CoveringLpSolution solve_covering_lp(const CoveringLp& lp);

/// Polynomial form of the basic-variable values when cost[c] = q^degree[c]:
/// entry i is sum_c basis_inverse[i][c] * q^degree[c].
std::vector<Polynomial> basic_value_polynomials(const CoveringLpSolution& sol, const std::vector<unsigned>& degree);

}  // namespace threshkit
