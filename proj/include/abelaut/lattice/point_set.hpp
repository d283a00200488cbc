#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "../core/error.hpp"

namespace abelaut::lattice {

using Coord = std::int64_t;
using Point = std::vector<Coord>;

inline std::string to_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

inline Point operator+(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Point operator-(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

/// Finite set of integer points of one ambient dimension, kept sorted
/// lexicographically and duplicate-free.
class LatticeSet {
 public:
  explicit LatticeSet(std::size_t dim = 0) : dim_(dim) {}

  LatticeSet(std::size_t dim, std::vector<Point> points) : dim_(dim), pts_(std::move(points)) {
    for (const auto& p : pts_)
      require(p.size() == dim_, "point " + to_string(p) + " does not have dimension " +
                                    std::to_string(dim_));
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
  }

  // Dimension taken from the first point; use the two-argument form for empty sets.
  static LatticeSet of(std::vector<Point> points) {
    require(!points.empty(), "cannot infer the dimension of an empty point list");
    std::size_t d = points.front().size();
    return LatticeSet(d, std::move(points));
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  const std::vector<Point>& points() const { return pts_; }
  const Point& operator[](std::size_t i) const { return pts_[i]; }
  auto begin() const { return pts_.begin(); }
  auto end() const { return pts_.end(); }

  bool contains(const Point& p) const {
    return p.size() == dim_ && std::binary_search(pts_.begin(), pts_.end(), p);
  }

  bool is_subset_of(const LatticeSet& other) const {
    return dim_ == other.dim_ &&
           std::includes(other.pts_.begin(), other.pts_.end(), pts_.begin(), pts_.end());
  }

  LatticeSet minus(const LatticeSet& other) const {
    require(dim_ == other.dim_, "dimension mismatch in set difference");
    std::vector<Point> out;
    std::set_difference(pts_.begin(), pts_.end(), other.pts_.begin(), other.pts_.end(),
                        std::back_inserter(out));
    return from_sorted(dim_, std::move(out));
  }

  LatticeSet united(const LatticeSet& other) const {
    require(dim_ == other.dim_, "dimension mismatch in set union");
    std::vector<Point> out;
    std::set_union(pts_.begin(), pts_.end(), other.pts_.begin(), other.pts_.end(),
                   std::back_inserter(out));
    return from_sorted(dim_, std::move(out));
  }

  LatticeSet translated(const Point& offset) const {
    require(offset.size() == dim_, "translation vector has the wrong dimension");
    std::vector<Point> out;
    out.reserve(pts_.size());
    for (const auto& p : pts_) out.push_back(p + offset);
    return from_sorted(dim_, std::move(out));
  }

  /// Componentwise (min, max). Empty sets have no box.
  std::pair<Point, Point> bounding_box() const {
    require(!pts_.empty(), "bounding box of an empty set");
    Point lo = pts_.front(), hi = pts_.front();
    for (const auto& p : pts_)
      for (std::size_t i = 0; i < dim_; ++i) {
        lo[i] = std::min(lo[i], p[i]);
        hi[i] = std::max(hi[i], p[i]);
      }
    return {lo, hi};
  }

  // Caller guarantees the points are sorted, unique and of dimension dim.
  static LatticeSet from_sorted(std::size_t dim, std::vector<Point> points) {
    LatticeSet s(dim);
    s.pts_ = std::move(points);
    return s;
  }

  friend bool operator==(const LatticeSet& a, const LatticeSet& b) {
    return a.dim_ == b.dim_ && a.pts_ == b.pts_;
  }
  friend bool operator!=(const LatticeSet& a, const LatticeSet& b) { return !(a == b); }

 private:
  std::size_t dim_;
  std::vector<Point> pts_;
};

/// Mid-points stored doubled: the element p+q stands for (p+q)/2.
struct HalfPointSet {
  LatticeSet doubled_points;

  std::size_t size() const { return doubled_points.size(); }
  bool contains_doubled(const Point& s) const { return doubled_points.contains(s); }
  bool contains_point(const Point& p) const {
    Point twice(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) twice[i] = 2 * p[i];
    return doubled_points.contains(twice);
  }
};

}  // namespace abelaut::lattice
