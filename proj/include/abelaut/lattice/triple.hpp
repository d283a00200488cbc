#pragma once

#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

#include "operations.hpp"

namespace abelaut::lattice {

/// Nested sets a1 ⊆ a2 ⊆ a3 of one ambient dimension.
struct ConvexTriple {
  LatticeSet a1, a2, a3;
  std::string witness_regions;  // free-form note from the generator, may be empty

  std::size_t dim() const { return a3.dim(); }

  bool nested() const {
    return a1.dim() == a2.dim() && a2.dim() == a3.dim() && a1.is_subset_of(a2) && a2.is_subset_of(a3);
  }

  friend bool operator==(const ConvexTriple& x, const ConvexTriple& y) {
    return x.a1 == y.a1 && x.a2 == y.a2 && x.a3 == y.a3;
  }
};

/// Which of the invariants a triple actually satisfies. Hull scans are
/// exact and therefore slow on large sets.
struct TripleValidity {
  bool nested = false;
  bool a1_in_a2 = false, a2_in_a3 = false;
  bool integrally_convex[3] = {false, false, false};
  bool ok() const {
    return nested && a1_in_a2 && a2_in_a3 && integrally_convex[0] && integrally_convex[1] &&
           integrally_convex[2];
  }
};

inline TripleValidity validate(const ConvexTriple& t) {
  TripleValidity v;
  v.nested = t.nested();
  if (!v.nested) return v;
  v.a1_in_a2 = is_relatively_convex(t.a1, t.a2);
  v.a2_in_a3 = is_relatively_convex(t.a2, t.a3);
  v.integrally_convex[0] = is_integrally_convex(t.a1);
  v.integrally_convex[1] = is_integrally_convex(t.a2);
  v.integrally_convex[2] = is_integrally_convex(t.a3);
  return v;
}

/// #(a1.a3 ∪ a2.a2), counted on doubled sums.
inline std::size_t union_count(const ConvexTriple& t) {
  require(t.a1.dim() == t.a3.dim() && t.a2.dim() == t.a3.dim(), "triple members differ in dimension");
  if (t.a3.empty()) return 0;
  auto [lo, hi] = t.a3.bounding_box();
  auto keys = BoxKeys::for_box(lo + lo, hi + hi);
  if (!keys) return midpoint_set(t.a1, t.a3).doubled_points.united(midpoint_set(t.a2, t.a2).doubled_points).size();
  KeySet set(keys->volume(), t.a1.size() * t.a3.size() + t.a2.size() * (t.a2.size() + 1) / 2);
  detail::each_sum(t.a1, t.a3, false, [&](const Point& p, const Point& q) { set.insert(keys->key_of_sum(p, q)); });
  detail::each_sum(t.a2, t.a2, true, [&](const Point& p, const Point& q) { set.insert(keys->key_of_sum(p, q)); });
  return set.count();
}

enum class SquashVariant { reduce_a3, reduce_a2, reduce_all };

inline std::string to_string(SquashVariant v) {
  switch (v) {
    case SquashVariant::reduce_a3: return "reduce-a3";
    case SquashVariant::reduce_a2: return "reduce-a2";
    case SquashVariant::reduce_all: return "reduce-all";
  }
  return "?";
}

inline SquashVariant parse_squash_variant(const std::string& s) {
  if (s == "reduce-a3") return SquashVariant::reduce_a3;
  if (s == "reduce-a2") return SquashVariant::reduce_a2;
  if (s == "reduce-all") return SquashVariant::reduce_all;
  throw PreconditionError("unknown squash variant '" + s + "'");
}

/// The integral map x -> origin + B^T U^{-1} phi(U z), z the lattice
/// coordinates of x in the span of a3 and phi folding the last coordinate
/// into the others with multiplier t.
struct SquashMap {
  SquashVariant variant{};
  AffineLattice span;
  IntMatrix u, u_inverse;
  Integer t;
  std::size_t source_dim = 0, target_dim = 0;

  Point apply(const Point& x) const {
    IntVector y = multiply(u, span.coordinates(x));
    std::size_t r = y.size();
    for (std::size_t i = 0; i + 1 < r; ++i) y[i] += t * y[r - 1];
    y[r - 1] = 0;
    return span.embed(multiply(u_inverse, y));
  }

  LatticeSet apply(const LatticeSet& s) const {
    std::vector<Point> out;
    out.reserve(s.size());
    for (const auto& p : s) out.push_back(apply(p));
    return LatticeSet(s.dim(), std::move(out));
  }
};

struct SquashResult {
  ConvexTriple triple;
  SquashMap map;
};

inline SquashResult squash_projection(const ConvexTriple& t, SquashVariant variant) {
  require(t.nested(), "squash_projection needs a nested triple");
  require(!t.a1.empty(), "squash_projection needs a nonempty a1");
  const std::size_t d1 = dimension(t.a1), d2 = dimension(t.a2), d3 = dimension(t.a3);
  SquashMap m;
  m.variant = variant;
  {
    // anchored at a point of a1, so a1 and a2 have coordinate spans through 0
    std::vector<Point> anchor{t.a1[0]};
    anchor.insert(anchor.end(), t.a3.begin(), t.a3.end());
    m.span = affine_lattice(anchor);
  }
  const std::size_t r = m.span.rank();
  require(r >= 2, "squash_projection needs dim(a3) >= 2, got " + std::to_string(d3));

  auto coords_of = [&](const LatticeSet& s) {
    IntMatrix rows;
    for (const auto& p : s) rows.push_back(m.span.coordinates(p));
    return rows;
  };

  IntVector w(r, 0);
  switch (variant) {
    case SquashVariant::reduce_a3: {
      require(d2 < d3, "reduce-a3 needs dim(a2) < dim(a3), got " + std::to_string(d2) + " and " +
                           std::to_string(d3));
      w = integer_kernel(coords_of(t.a2), r).front();
      break;
    }
    case SquashVariant::reduce_a2: {
      require(d1 < d2 && d2 == d3, "reduce-a2 needs dim(a1) < dim(a2) = dim(a3), got " +
                                       std::to_string(d1) + ", " + std::to_string(d2) + ", " +
                                       std::to_string(d3));
      w = integer_kernel(coords_of(t.a1), r).front();
      break;
    }
    case SquashVariant::reduce_all: {
      require(d1 == d2 && d2 == d3, "reduce-all needs dim(a1) = dim(a2) = dim(a3)");
      w[r - 1] = 1;
      break;
    }
  }
  std::tie(m.u, m.u_inverse) = unimodular_with_last_row(w);

  Integer bound = 0;
  for (const auto& p : t.a3)
    for (const auto& c : multiply(m.u, m.span.coordinates(p))) bound = std::max(bound, Integer(abs(c)));
  m.t = 2 * bound + 1;
  m.source_dim = d3;

  SquashResult res;
  res.triple.a1 = variant == SquashVariant::reduce_all ? m.apply(t.a1) : t.a1;
  res.triple.a2 = variant == SquashVariant::reduce_a3 ? t.a2 : m.apply(t.a2);
  res.triple.a3 = m.apply(t.a3);
  res.triple.witness_regions = t.witness_regions;
  m.target_dim = dimension(res.triple.a3);
  res.map = std::move(m);
  return res;
}

}  // namespace abelaut::lattice
