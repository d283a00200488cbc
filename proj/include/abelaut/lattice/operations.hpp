#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "hull.hpp"
#include "integer_linalg.hpp"
#include "packing.hpp"
#include "point_set.hpp"

namespace abelaut::lattice {

namespace detail {

inline void require_same_dim(const LatticeSet& a, const LatticeSet& b) {
  require(a.dim() == b.dim(), "dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                  std::to_string(b.dim()));
}

inline std::optional<BoxKeys> sum_box(const LatticeSet& a, const LatticeSet& b) {
  auto [la, ha] = a.bounding_box();
  auto [lb, hb] = b.bounding_box();
  return BoxKeys::for_box(la + lb, ha + hb);
}

// Feeds p+q for every p in a, q in b; with symmetric=true only i <= j (a == b).
template <class Sink>
void each_sum(const LatticeSet& a, const LatticeSet& b, bool symmetric, Sink&& sink) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = symmetric ? i : 0; j < b.size(); ++j) sink(a[i], b[j]);
}

}  // namespace detail

/// Doubled mid-point set {p+q : p in a, q in b}.
inline HalfPointSet midpoint_set(const LatticeSet& a, const LatticeSet& b) {
  detail::require_same_dim(a, b);
  if (a.empty() || b.empty()) return {LatticeSet(a.dim())};
  bool sym = (&a == &b) || a == b;
  if (auto keys = detail::sum_box(a, b)) {
    KeySet set(keys->volume(), sym ? a.size() * (a.size() + 1) / 2 : a.size() * b.size());
    detail::each_sum(a, b, sym, [&](const Point& p, const Point& q) { set.insert(keys->key_of_sum(p, q)); });
    std::vector<Point> out;
    for (auto k : set.sorted_keys()) out.push_back(keys->decode(k));
    return {LatticeSet::from_sorted(a.dim(), std::move(out))};
  }
  std::vector<Point> out;
  detail::each_sum(a, b, sym, [&](const Point& p, const Point& q) { out.push_back(p + q); });
  return {LatticeSet(a.dim(), std::move(out))};
}

inline std::size_t midpoint_count(const LatticeSet& a, const LatticeSet& b) {
  detail::require_same_dim(a, b);
  if (a.empty() || b.empty()) return 0;
  bool sym = (&a == &b) || a == b;
  if (auto keys = detail::sum_box(a, b)) {
    KeySet set(keys->volume(), sym ? a.size() * (a.size() + 1) / 2 : a.size() * b.size());
    detail::each_sum(a, b, sym, [&](const Point& p, const Point& q) { set.insert(keys->key_of_sum(p, q)); });
    return set.count();
  }
  return midpoint_set(a, b).size();
}

/// Dimension of the affine span.
inline std::size_t dimension(const LatticeSet& a) {
  require(!a.empty(), "dimension of an empty set");
  IntMatrix diffs;
  diffs.reserve(a.size());
  for (const auto& p : a) diffs.push_back(to_int_vector(p - a[0]));
  return rank_of(diffs, a.dim());
}

/// Length of the longest arithmetic progression with primitive step.
inline std::size_t longest_chain(const LatticeSet& a) {
  require(!a.empty(), "longest chain of an empty set");
  if (a.size() == 1) return 1;
  const std::size_t d = a.dim();
  auto [lo, hi] = a.bounding_box();
  auto keys = BoxKeys::for_box(lo, hi);

  std::vector<std::uint64_t> bits;
  std::unordered_set<std::uint64_t> hashed;
  bool dense = keys && keys->volume() <= KeySet::kBitmapLimit;
  if (keys) {
    if (dense) bits.assign((keys->volume() + 63) / 64, 0);
    for (const auto& p : a) {
      auto k = keys->key(p);
      if (dense)
        bits[k >> 6] |= std::uint64_t{1} << (k & 63);
      else
        hashed.insert(k);
    }
  }
  auto member = [&](const Point& p) {
    if (!keys) return a.contains(p);
    if (!keys->inside(p)) return false;
    auto k = keys->key(p);
    return dense ? ((bits[k >> 6] >> (k & 63)) & 1) != 0 : hashed.count(k) != 0;
  };

  std::size_t best = 1;
  Point step(d), cur(d);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      Coord g = 0;
      for (std::size_t c = 0; c < d; ++c) {
        step[c] = a[j][c] - a[i][c];
        g = std::gcd(g, step[c]);
      }
      for (auto& s : step) s /= g;
      // only walk from the first point of the progression
      for (std::size_t c = 0; c < d; ++c) cur[c] = a[i][c] - step[c];
      if (member(cur)) continue;
      std::size_t len = 1;
      cur = a[i];
      for (;;) {
        for (std::size_t c = 0; c < d; ++c) cur[c] += step[c];
        if (!member(cur)) break;
        ++len;
      }
      best = std::max(best, len);
    }
  }
  return best;
}

/// True iff no point of a - b lies in conv(b). Requires b ⊆ a.
inline bool is_relatively_convex(const LatticeSet& b, const LatticeSet& a) {
  detail::require_same_dim(a, b);
  require(b.is_subset_of(a), "relative convexity needs b to be a subset of a");
  if (b.empty()) return true;
  for (const auto& p : a.minus(b))
    if (in_convex_hull(b, p)) return false;
  return true;
}

/// True iff a is the set of all integer points of conv(a). Scans the bounding box.
inline bool is_integrally_convex(const LatticeSet& a) {
  if (a.empty()) return true;
  auto [lo, hi] = a.bounding_box();
  Point p = lo;
  for (;;) {
    if (!a.contains(p) && in_convex_hull(a, p)) return false;
    std::size_t i = p.size();
    while (i-- > 0) {
      if (p[i] < hi[i]) {
        ++p[i];
        break;
      }
      p[i] = lo[i];
    }
    if (i == static_cast<std::size_t>(-1)) return true;
  }
}

/// Compression along `axis`: each fibre of size s becomes {0, ..., s-1}.
inline LatticeSet arrangement(const LatticeSet& a, std::size_t axis) {
  require(axis < a.dim(), "axis " + std::to_string(axis) + " out of range for dimension " +
                              std::to_string(a.dim()));
  std::vector<Point> rows(a.begin(), a.end());
  auto rest_less = [axis](const Point& p, const Point& q) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i == axis) continue;
      if (p[i] != q[i]) return p[i] < q[i];
    }
    return false;
  };
  std::sort(rows.begin(), rows.end(), rest_less);
  std::vector<Point> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size();) {
    std::size_t j = i;
    while (j < rows.size() && !rest_less(rows[i], rows[j]) && !rest_less(rows[j], rows[i])) ++j;
    for (std::size_t k = 0; k < j - i; ++k) {
      Point p = rows[i];
      p[axis] = static_cast<Coord>(k);
      out.push_back(std::move(p));
    }
    i = j;
  }
  return LatticeSet(a.dim(), std::move(out));
}

inline LatticeSet arrange_all_axes(LatticeSet a) {
  for (std::size_t axis = 0; axis < a.dim(); ++axis) a = arrangement(a, axis);
  return a;
}

/// Non-negative and closed under decreasing any coordinate towards 0.
inline bool is_staircase(const LatticeSet& a) {
  for (const auto& p : a) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] < 0) return false;
      if (p[i] == 0) continue;
      Point q = p;
      --q[i];
      if (!a.contains(q)) return false;
    }
  }
  return true;
}

}  // namespace abelaut::lattice
