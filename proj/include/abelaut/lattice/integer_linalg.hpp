#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "../core/error.hpp"
#include "../core/rational.hpp"
#include "point_set.hpp"

namespace abelaut::lattice {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;  // row-major

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntVector to_int_vector(const Point& p) { return IntVector(p.begin(), p.end()); }

inline IntVector multiply(const IntMatrix& m, const IntVector& v) {
  IntVector r(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
  return r;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  std::size_t inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  IntMatrix r(a.size(), IntVector(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < cols; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline Integer gcd_of(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

/// Column reduction C·V = H with V unimodular. H is in column echelon form:
/// the first `rank` columns carry pivots, the rest are zero. The inverse of
/// V is maintained alongside by the matching row operations.
struct ColumnEchelon {
  IntMatrix h, v, v_inverse;
  std::size_t rank = 0;
};

inline ColumnEchelon column_echelon(const IntMatrix& c, std::size_t cols) {
  ColumnEchelon r{c, identity_matrix(cols), identity_matrix(cols), 0};
  auto& h = r.h;
  auto add_col = [&](std::size_t dst, std::size_t src, const Integer& k) {
    for (auto& row : h) row[dst] += k * row[src];
    for (auto& row : r.v) row[dst] += k * row[src];
    for (std::size_t j = 0; j < cols; ++j) r.v_inverse[src][j] -= k * r.v_inverse[dst][j];
  };
  auto swap_col = [&](std::size_t a, std::size_t b) {
    for (auto& row : h) std::swap(row[a], row[b]);
    for (auto& row : r.v) std::swap(row[a], row[b]);
    std::swap(r.v_inverse[a], r.v_inverse[b]);
  };
  auto negate_col = [&](std::size_t a) {
    for (auto& row : h) row[a] = -row[a];
    for (auto& row : r.v) row[a] = -row[a];
    for (auto& x : r.v_inverse[a]) x = -x;
  };

  for (std::size_t i = 0; i < h.size() && r.rank < cols; ++i) {
    std::size_t piv = r.rank;
    for (;;) {
      // smallest nonzero |entry| in row i among the free columns becomes the pivot
      std::size_t best = cols;
      for (std::size_t j = piv; j < cols; ++j)
        if (h[i][j] != 0 && (best == cols || abs(h[i][j]) < abs(h[i][best]))) best = j;
      if (best == cols) break;
      if (best != piv) swap_col(best, piv);
      bool done = true;
      for (std::size_t j = piv + 1; j < cols; ++j) {
        if (h[i][j] == 0) continue;
        add_col(j, piv, -(h[i][j] / h[i][piv]));
        if (h[i][j] != 0) done = false;
      }
      if (done) break;
    }
    if (h[i][piv] != 0) {
      if (h[i][piv] < 0) negate_col(piv);
      ++r.rank;
    }
  }
  return r;
}

inline std::size_t rank_of(const IntMatrix& rows, std::size_t cols) {
  return column_echelon(rows, cols).rank;
}

/// Z-basis (as rows) of { x in Z^cols : rows·x = 0 }.
inline IntMatrix integer_kernel(const IntMatrix& rows, std::size_t cols) {
  auto e = column_echelon(rows, cols);
  IntMatrix basis;
  for (std::size_t j = e.rank; j < cols; ++j) {
    IntVector col(cols);
    for (std::size_t i = 0; i < cols; ++i) col[i] = e.v[i][j];
    basis.push_back(std::move(col));
  }
  return basis;
}

/// Unimodular U whose last row is the primitive vector w.
inline std::pair<IntMatrix, IntMatrix> unimodular_with_last_row(const IntVector& w) {
  std::size_t n = w.size();
  require(n > 0 && gcd_of(w) == 1, "vector is not primitive");
  auto e = column_echelon(IntMatrix{w}, n);
  // w·V = e_1^T, so w is the first row of V^{-1}; rotate it to the bottom.
  IntMatrix u(n), u_inv(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i) u[i] = e.v_inverse[(i + 1) % n];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u_inv[i][j] = e.v[i][(j + 1) % n];
  return {u, u_inv};
}

/// Saturated lattice coordinates for the affine span of a point list:
/// x = origin + basis^T · z with z integral exactly when x is an integral
/// point of the span.
struct AffineLattice {
  Point origin;
  IntMatrix basis;          // rank rows of length n
  IntMatrix to_coordinates;  // rank rows; z = to_coordinates · (x - origin)
  std::size_t rank() const { return basis.size(); }

  IntVector coordinates(const Point& x) const { return multiply(to_coordinates, to_int_vector(x - origin)); }

  Point embed(const IntVector& z) const {
    Point x = origin;
    for (std::size_t r = 0; r < basis.size(); ++r)
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += to_int64(basis[r][i] * z[r]);
    return x;
  }
};

inline AffineLattice affine_lattice(const std::vector<Point>& pts) {
  require(!pts.empty(), "affine span of an empty set");
  std::size_t n = pts.front().size();
  IntMatrix diffs;
  for (const auto& p : pts) diffs.push_back(to_int_vector(p - pts.front()));
  IntMatrix normals = integer_kernel(diffs, n);
  auto e = column_echelon(normals, n);
  AffineLattice l;
  l.origin = pts.front();
  for (std::size_t j = e.rank; j < n; ++j) {
    IntVector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = e.v[i][j];
    l.basis.push_back(std::move(col));
    l.to_coordinates.push_back(e.v_inverse[j]);
  }
  return l;
}

}  // namespace abelaut::lattice
