#pragma once

#include <cstddef>
#include <vector>

#include "../core/rational.hpp"
#include "point_set.hpp"

namespace abelaut::lattice {

namespace detail {

// Phase-one simplex over the rationals, Bland's rule. Decides whether
// sum_i lambda_i (p_i - x) = 0, sum_i lambda_i = 1, lambda >= 0 is feasible.
inline bool convex_combination_exists(const std::vector<Point>& pts, const Point& x) {
  const std::size_t n = pts.size(), d = x.size(), m = d + 1;
  const std::size_t cols = n + m;  // structural then artificial
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols + 1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < d; ++i) t[i][j] = Rational(pts[j][i] - x[i]);
    t[d][j] = 1;
  }
  t[d][cols] = 1;
  for (std::size_t i = 0; i < m; ++i) t[i][n + i] = 1;
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  // reduced cost row of "minimise the sum of artificials"
  std::vector<Rational> cost(cols + 1);
  for (std::size_t j = 0; j <= cols; ++j) {
    if (j >= n && j < cols) continue;
    for (std::size_t i = 0; i < m; ++i) cost[j] -= t[i][j];
  }

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded cannot happen for phase one; defensive
    Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j)
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      Rational f = cost[enter];
      for (std::size_t j = 0; j <= cols; ++j)
        if (t[leave][j] != 0) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return cost[cols] == 0;
}

}  // namespace detail

/// Exact test of x in conv(pts).
inline bool in_convex_hull(const LatticeSet& pts, const Point& x) {
  require(x.size() == pts.dim(), "hull query point has the wrong dimension");
  if (pts.empty()) return false;
  if (pts.contains(x)) return true;
  auto [lo, hi] = pts.bounding_box();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return detail::convex_combination_exists(pts.points(), x);
}

}  // namespace abelaut::lattice
