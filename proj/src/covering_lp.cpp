#include "threshkit/covering_lp.hpp"

#include "threshkit/error.hpp"

namespace threshkit {

CoveringLpSolution solve_covering_lp(const CoveringLp& lp) {
  const std::size_t m = lp.elements;
  const std::size_t p = lp.covers.size();
  if (lp.costs.size() != p) throw Error(ErrorKind::InvalidArgument, "covering LP: one cost per candidate required");
  {
    std::vector<char> covered(m, 0);
    for (const auto& cov : lp.covers) {
      for (std::size_t e : cov) {
        if (e >= m) throw Error(ErrorKind::InvalidArgument, "covering LP: element index out of range");
        covered[e] = 1;
      }
    }
    for (std::size_t e = 0; e < m; ++e) {
      if (!covered[e]) throw Error(ErrorKind::InvalidArgument, "covering LP is infeasible: an element has no candidate");
    }
    for (const auto& c : lp.costs) {
      if (c < 0) throw Error(ErrorKind::InvalidArgument, "covering LP: negative cost");
    }
  }

  // Dual: max sum_e y_e  s.t.  sum_{e in cov(c)} y_e + s_c = cost_c.
  // Columns 0..m-1 are y, m..m+p-1 are slacks, the last one is the RHS.
  const std::size_t cols = m + p;
  std::vector<std::vector<Rational>> t(p, std::vector<Rational>(cols + 1, Rational(0)));
  std::vector<std::size_t> basic(p);
  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t e : lp.covers[c]) t[c][e] = 1;
    t[c][m + c] = 1;
    t[c][cols] = lp.costs[c];
    basic[c] = m + c;
  }
  std::vector<Rational> obj(cols + 1, Rational(0));  // reduced costs z_j - c_j; obj[cols] is the value
  for (std::size_t e = 0; e < m; ++e) obj[e] = -1;

  CoveringLpSolution sol;
  std::vector<std::size_t> nz;
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = p;
    Rational best_ratio;
    for (std::size_t r = 0; r < p; ++r) {
      if (t[r][enter] <= 0) continue;
      Rational ratio = t[r][cols] / t[r][enter];
      if (leave == p || ratio < best_ratio || (ratio == best_ratio && basic[r] < basic[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    // The dual feasible region is bounded (every y_e appears in a row with a
    // finite cost), so a leaving row always exists.
    if (leave == p) throw Error(ErrorKind::InvalidArgument, "covering LP dual is unbounded");

    auto& prow = t[leave];
    const Rational inv = Rational(1) / prow[enter];
    nz.clear();
    for (std::size_t j = 0; j <= cols; ++j) {
      if (prow[j] != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    for (std::size_t r = 0; r < p; ++r) {
      if (r == leave || t[r][enter] == 0) continue;
      const Rational f = t[r][enter];
      for (std::size_t j : nz) t[r][j] -= f * prow[j];
    }
    if (obj[enter] != 0) {
      const Rational f = obj[enter];
      for (std::size_t j : nz) obj[j] -= f * prow[j];
    }
    basic[leave] = enter;
    ++sol.pivots;
  }

  sol.value = obj[cols];
  sol.weights.resize(p);
  for (std::size_t c = 0; c < p; ++c) sol.weights[c] = obj[m + c];
  sol.duals.assign(m, Rational(0));
  for (std::size_t r = 0; r < p; ++r) {
    if (basic[r] < m) sol.duals[basic[r]] = t[r][cols];
  }
  sol.basis_inverse.resize(p);
  for (std::size_t r = 0; r < p; ++r) {
    sol.basis_inverse[r].assign(t[r].begin() + static_cast<std::ptrdiff_t>(m),
                                t[r].begin() + static_cast<std::ptrdiff_t>(m + p));
  }
  return sol;
}

std::vector<Polynomial> basic_value_polynomials(const CoveringLpSolution& sol, const std::vector<unsigned>& degree) {
  std::vector<Polynomial> out;
  out.reserve(sol.basis_inverse.size());
  unsigned max_deg = 0;
  for (unsigned d : degree) max_deg = std::max(max_deg, d);
  for (const auto& row : sol.basis_inverse) {
    std::vector<Rational> coeffs(max_deg + 1, Rational(0));
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] != 0) coeffs[degree.at(c)] += row[c];
    }
    out.emplace_back(std::move(coeffs));
  }
  return out;
}

}  // namespace threshkit
