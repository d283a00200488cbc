#pragma once

// Brute-force reference implementations. Deliberately simple: std::set of
// points, no packing, no early exits.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "../lattice/point_set.hpp"
#include "../lattice/triple.hpp"

namespace abelaut::testing {

using lattice::Coord;
using lattice::LatticeSet;
using lattice::Point;

inline std::set<Point> naive_doubled_midpoints(const LatticeSet& a, const LatticeSet& b) {
  std::set<Point> out;
  for (const auto& p : a)
    for (const auto& q : b) {
      Point s(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) s[i] = p[i] + q[i];
      out.insert(s);
    }
  return out;
}

inline std::size_t naive_longest_chain(const LatticeSet& a) {
  std::set<Point> members(a.begin(), a.end());
  std::size_t best = a.empty() ? 0 : 1;
  for (const auto& p : a)
    for (const auto& q : a) {
      if (p == q) continue;
      Point v(p.size());
      Coord g = 0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        v[i] = q[i] - p[i];
        g = std::gcd(g, v[i]);
      }
      for (auto& x : v) x /= g;
      std::size_t len = 0;
      Point cur = p;
      while (members.count(cur)) {
        ++len;
        for (std::size_t i = 0; i < cur.size(); ++i) cur[i] += v[i];
      }
      best = std::max(best, len);
    }
  return best;
}

inline std::set<Point> naive_arrangement(const LatticeSet& a, std::size_t axis) {
  std::set<Point> out;
  for (const auto& p : a) {
    Coord below = 0;
    for (const auto& q : a) {
      bool same_fibre = true;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (i != axis && p[i] != q[i]) same_fibre = false;
      if (same_fibre && q[axis] < p[axis]) ++below;
    }
    Point r = p;
    r[axis] = below;
    out.insert(r);
  }
  return out;
}

inline std::size_t naive_union_count(const lattice::ConvexTriple& t) {
  auto s = naive_doubled_midpoints(t.a1, t.a3);
  auto s2 = naive_doubled_midpoints(t.a2, t.a2);
  s.insert(s2.begin(), s2.end());
  return s.size();
}

}  // namespace abelaut::testing
