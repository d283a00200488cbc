#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "../core/rational.hpp"
#include "../core/seeds.hpp"
#include "../lattice/operations.hpp"
#include "../lattice/triple.hpp"

namespace abelaut::lemma {

using lattice::ConvexTriple;
using lattice::Coord;
using lattice::LatticeSet;
using lattice::Point;

struct GeneratorOptions {
  std::size_t dim = 3;
  std::size_t size_target = 30;  // #a3, up to ties on the boundary
  std::size_t min_a1_dim = 0;    // 0 means "full": equal to dim
  double a2_fraction_lo = 0.5, a2_fraction_hi = 0.9;
  double a1_fraction_lo = 0.2, a1_fraction_hi = 0.6;
  int max_retries = 200;
};

namespace detail {

// Level function (D x - c)^T Q (D x - c) of an integral ellipsoid.
struct Quadric {
  std::vector<std::vector<std::int64_t>> q;
  std::vector<std::int64_t> c;
  std::int64_t scale = 1;

  std::int64_t operator()(const Point& x) const {
    const std::size_t d = c.size();
    std::vector<std::int64_t> y(d);
    for (std::size_t i = 0; i < d; ++i) y[i] = scale * x[i] - c[i];
    std::int64_t v = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) v += y[i] * q[i][j] * y[j];
    return v;
  }

  // Diagonal of Q^{-1}, exactly.
  std::vector<Rational> inverse_diagonal() const {
    const std::size_t d = c.size();
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(2 * d));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) m[i][j] = q[i][j];
      m[i][d + i] = 1;
    }
    for (std::size_t col = 0; col < d; ++col) {
      std::size_t piv = col;
      while (m[piv][col] == 0) ++piv;
      std::swap(m[piv], m[col]);
      Rational p = m[col][col];
      for (auto& v : m[col]) v /= p;
      for (std::size_t r = 0; r < d; ++r) {
        if (r == col || m[r][col] == 0) continue;
        Rational f = m[r][col];
        for (std::size_t j = 0; j < 2 * d; ++j) m[r][j] -= f * m[col][j];
      }
    }
    std::vector<Rational> diag(d);
    for (std::size_t i = 0; i < d; ++i) diag[i] = m[i][d + i];
    return diag;
  }

  // All integer points with level <= r.
  std::vector<Point> points_below(std::int64_t r) const {
    const std::size_t d = c.size();
    auto inv = inverse_diagonal();
    Point lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
      // |scale x_i - c_i|^2 <= r (Q^{-1})_ii bounds the box
      Rational reach = inv[i] * r;
      Coord centre = c[i] / scale;
      lo[i] = centre;
      hi[i] = centre;
      auto fits = [&](Coord x) {
        Rational y = scale * x - c[i];
        return y * y <= reach;
      };
      while (fits(lo[i] - 1) || lo[i] * scale > c[i]) --lo[i];
      while (fits(hi[i] + 1) || hi[i] * scale < c[i]) ++hi[i];
    }
    std::vector<Point> out;
    Point p = lo;
    for (;;) {
      if ((*this)(p) <= r) out.push_back(p);
      std::size_t i = d;
      while (i-- > 0) {
        if (p[i] < hi[i]) {
          ++p[i];
          break;
        }
        p[i] = lo[i];
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
    return out;
  }
};

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Q = M^T M + I with small random integer M, so Q is symmetric positive definite.
inline Quadric random_quadric(std::mt19937_64& rng, std::size_t d, std::int64_t centre_spread) {
  Quadric f;
  f.scale = uniform(rng, 1, 4);
  std::vector<std::vector<std::int64_t>> m(d, std::vector<std::int64_t>(d));
  for (auto& row : m)
    for (auto& x : row) x = uniform(rng, -2, 2);
  f.q.assign(d, std::vector<std::int64_t>(d, 0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) f.q[i][j] += m[k][i] * m[k][j];
    f.q[i][i] += 1;
  }
  f.c.resize(d);
  for (auto& x : f.c) x = uniform(rng, -centre_spread * f.scale, centre_spread * f.scale);
  return f;
}

// Smallest level set of f (among candidates) holding at least `want` candidates.
inline std::vector<Point> cut_to_size(const Quadric& f, const std::vector<Point>& candidates,
                                      std::size_t want) {
  if (want >= candidates.size()) return candidates;
  std::vector<std::int64_t> levels;
  levels.reserve(candidates.size());
  for (const auto& p : candidates) levels.push_back(f(p));
  std::vector<std::int64_t> sorted = levels;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(want - 1), sorted.end());
  std::int64_t r = sorted[want - 1];
  std::vector<Point> out;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (levels[i] <= r) out.push_back(candidates[i]);
  return out;
}

inline std::vector<Point> ellipsoid_of_size(const Quadric& f, std::size_t want) {
  std::int64_t r = 1;
  for (;;) {
    auto pts = f.points_below(r);
    if (pts.size() >= want) return cut_to_size(f, pts, want);
    r *= 2;
  }
}

}  // namespace detail

/// Three nested ellipsoidal regions K3 ⊇ K2 = K3 ∩ E2 ⊇ K1 = K2 ∩ E1; each
/// a_i is the set of integer points of K_i, which makes every a_i integrally
/// convex and each relatively convex in the next.
inline ConvexTriple generate_nested_triple(const GeneratorOptions& opt, std::uint64_t seed) {
  require(opt.dim >= 2, "generator needs dim >= 2");
  require(opt.size_target >= opt.dim + 1, "size_target must be at least dim+1");
  const std::size_t want_dim = opt.min_a1_dim ? opt.min_a1_dim : opt.dim;
  require(want_dim <= opt.dim, "min_a1_dim exceeds dim");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < opt.max_retries; ++attempt) {
    auto e3 = detail::random_quadric(rng, opt.dim, 3);
    auto p3 = detail::ellipsoid_of_size(e3, opt.size_target);
    double f2 = detail::uniform_real(rng, opt.a2_fraction_lo, opt.a2_fraction_hi);
    double f1 = detail::uniform_real(rng, opt.a1_fraction_lo, opt.a1_fraction_hi);
    auto n2 = std::max<std::size_t>(1, static_cast<std::size_t>(f2 * static_cast<double>(p3.size())));
    auto n1 = std::max<std::size_t>(1, static_cast<std::size_t>(f1 * static_cast<double>(n2)));

    // the inner ellipsoids are centred near a random point of the outer one
    auto e2 = detail::random_quadric(rng, opt.dim, 0);
    auto e1 = detail::random_quadric(rng, opt.dim, 0);
    const Point& anchor = p3[static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<std::int64_t>(p3.size()) - 1))];
    for (std::size_t i = 0; i < opt.dim; ++i) {
      e2.c[i] = (2 * e3.scale * anchor[i] * e2.scale + e3.c[i] * e2.scale) / (3 * e3.scale);
      e1.c[i] = e1.scale * anchor[i];
    }
    auto p2 = detail::cut_to_size(e2, p3, n2);
    auto p1 = detail::cut_to_size(e1, p2, n1);

    ConvexTriple t{LatticeSet(opt.dim, p1), LatticeSet(opt.dim, p2), LatticeSet(opt.dim, p3),
                   "ellipsoids seed=" + std::to_string(seed) + " attempt=" + std::to_string(attempt)};
    if (lattice::dimension(t.a1) >= want_dim) return t;
  }
  throw PreconditionError("generator could not reach dim(a1) >= " + std::to_string(want_dim) +
                          " within " + std::to_string(opt.max_retries) + " attempts");
}

struct LargeOptions {
  std::size_t dim = 4;
  std::size_t min_size = 1100, max_size = 3000;
  std::size_t min_a1_dim = 4;
  lattice::Coord side = 0;  // box side L; 0 picks the least L whose box holds min_size points, or one more
  int max_retries = 200;
};

/// Box [0, L-1]^d cut by one halfspace for a3, with a2 and a1 further
/// halfspace cuts. Chains stay at most L long, which is the point.
inline ConvexTriple generate_large_triple(const LargeOptions& opt, std::uint64_t seed) {
  require(opt.dim >= 2 && opt.min_size <= opt.max_size && opt.min_size > 0, "bad large-instance options");
  std::mt19937_64 rng(seed);
  const std::size_t d = opt.dim;
  // least L whose box holds min_size points
  Coord side = 1;
  auto box_volume = [&](Coord l) {
    double v = 1;
    for (std::size_t i = 0; i < d; ++i) v *= static_cast<double>(l);
    return v;
  };
  while (box_volume(side) < static_cast<double>(opt.min_size)) ++side;

  for (int attempt = 0; attempt < opt.max_retries; ++attempt) {
    Coord l = opt.side ? opt.side : side + static_cast<Coord>(detail::uniform(rng, 0, 1));
    std::vector<Point> box;
    Point p(d, 0);
    for (;;) {
      box.push_back(p);
      std::size_t i = d;
      while (i-- > 0) {
        if (p[i] < l - 1) {
          ++p[i];
          break;
        }
        p[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
    auto cut = [&](const std::vector<Point>& pts, std::size_t lo, std::size_t hi) {
      std::vector<Coord> a(d);
      for (auto& x : a) x = detail::uniform(rng, 1, 5);
      std::vector<std::pair<Coord, std::size_t>> level;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        Coord v = 0;
        for (std::size_t k = 0; k < d; ++k) v += a[k] * pts[i][k];
        level.push_back({v, i});
      }
      std::sort(level.begin(), level.end());
      std::size_t want = static_cast<std::size_t>(detail::uniform(rng, static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
      want = std::min(want, pts.size());
      Coord r = level[want - 1].first;
      std::vector<Point> out;
      for (auto& [v, i] : level)
        if (v <= r) out.push_back(pts[i]);
      return out;
    };
    if (box.size() < opt.min_size) continue;
    auto p3 = cut(box, opt.min_size, std::min(opt.max_size, box.size()));
    if (p3.size() > opt.max_size) continue;
    auto p2 = cut(p3, (p3.size() + 3) / 4, p3.size());
    auto p1 = cut(p2, std::min<std::size_t>(p2.size(), 2 * d), p2.size() / 2 + 1);
    ConvexTriple t{LatticeSet(d, p1), LatticeSet(d, p2), LatticeSet(d, p3),
                   "box L=" + std::to_string(l) + " halfspace cuts seed=" + std::to_string(seed)};
    if (lattice::dimension(t.a1) >= opt.min_a1_dim) return t;
  }
  throw PreconditionError("large generator could not reach dim(a1) >= " + std::to_string(opt.min_a1_dim));
}

}  // namespace abelaut::lemma
