#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "point_set.hpp"

namespace abelaut::lattice {

/// Mixed-radix encoding of the integer points of a box into one 64-bit key.
/// The first coordinate is the most significant digit, so key order agrees
/// with lexicographic point order.
class BoxKeys {
 public:
  static std::optional<BoxKeys> for_box(const Point& lo, const Point& hi) {
    BoxKeys k;
    k.lo_ = lo;
    k.extent_.resize(lo.size());
    k.stride_.resize(lo.size());
    unsigned __int128 volume = 1;
    for (std::size_t i = lo.size(); i-- > 0;) {
      if (hi[i] < lo[i]) return std::nullopt;
      unsigned __int128 ext = static_cast<unsigned __int128>(hi[i] - lo[i]) + 1;
      k.stride_[i] = static_cast<std::uint64_t>(volume);
      volume *= ext;
      if (volume >= (static_cast<unsigned __int128>(1) << 63)) return std::nullopt;
      k.extent_[i] = static_cast<std::uint64_t>(ext);
    }
    k.volume_ = static_cast<std::uint64_t>(volume);
    return k;
  }

  std::uint64_t volume() const { return volume_; }

  bool inside(const Point& p) const {
    for (std::size_t i = 0; i < lo_.size(); ++i)
      if (p[i] < lo_[i] || static_cast<std::uint64_t>(p[i] - lo_[i]) >= extent_[i]) return false;
    return true;
  }

  std::uint64_t key(const Point& p) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < lo_.size(); ++i)
      k += static_cast<std::uint64_t>(p[i] - lo_[i]) * stride_[i];
    return k;
  }

  // Key of a+b without materialising the sum.
  std::uint64_t key_of_sum(const Point& a, const Point& b) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < lo_.size(); ++i)
      k += static_cast<std::uint64_t>(a[i] + b[i] - lo_[i]) * stride_[i];
    return k;
  }

  Point decode(std::uint64_t k) const {
    Point p(lo_.size());
    for (std::size_t i = 0; i < lo_.size(); ++i) {
      p[i] = lo_[i] + static_cast<Coord>(k / stride_[i]);
      k %= stride_[i];
    }
    return p;
  }

 private:
  Point lo_;
  std::vector<std::uint64_t> extent_, stride_;
  std::uint64_t volume_ = 0;
};

/// Set of keys below a fixed volume: a bitmap when the volume is small
/// enough, otherwise a vector that is sorted and deduplicated on demand.
class KeySet {
 public:
  static constexpr std::uint64_t kBitmapLimit = std::uint64_t{1} << 28;

  KeySet(std::uint64_t volume, std::size_t expected)
      : dense_(volume <= kBitmapLimit && volume / 64 <= 16 * expected + 4096) {
    if (dense_)
      bits_.assign((volume + 63) / 64, 0);
    else
      keys_.reserve(expected);
  }

  void insert(std::uint64_t k) {
    if (dense_)
      bits_[k >> 6] |= std::uint64_t{1} << (k & 63);
    else
      keys_.push_back(k);
  }

  std::size_t count() {
    if (dense_) {
      std::size_t c = 0;
      for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
      return c;
    }
    normalise();
    return keys_.size();
  }

  std::vector<std::uint64_t> sorted_keys() {
    if (!dense_) {
      normalise();
      return keys_;
    }
    std::vector<std::uint64_t> out;
    for (std::size_t w = 0; w < bits_.size(); ++w)
      for (auto word = bits_[w]; word; word &= word - 1)
        out.push_back(w * 64 + static_cast<std::uint64_t>(std::countr_zero(word)));
    return out;
  }

 private:
  void normalise() {
    std::sort(keys_.begin(), keys_.end());
    keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  }

  bool dense_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint64_t> keys_;
};

}  // namespace abelaut::lattice
