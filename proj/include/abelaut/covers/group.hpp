#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "../core/error.hpp"

namespace abelaut::covers {

using Element = std::vector<int>;  // one residue per invariant factor

/// Z/d1 x ... x Z/dm with d1 | d2 | ... | dm, every di >= 2.
/// Elements are also addressed by a mixed-radix index in [0, order).
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() : FiniteAbelianGroup(std::vector<int>{}) {}

  explicit FiniteAbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      require(factors_[i] >= 2, "invariant factors must be >= 2");
      require(i == 0 || factors_[i] % factors_[i - 1] == 0,
              "invariant factors must form a divisibility chain");
    }
    order_ = 1;
    for (int d : factors_) order_ *= d;
    build_tables();
    aut_ = std::make_shared<AutCache>();
  }

  const std::vector<int>& invariant_factors() const { return factors_; }
  int order() const { return order_; }
  bool is_cyclic() const { return factors_.size() <= 1; }
  int exponent() const { return factors_.empty() ? 1 : factors_.back(); }

  std::string name() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? "x" : "") + ("Z/" + std::to_string(factors_[i]));
    return s;
  }

  // index <-> residues
  int index(const Element& e) const {
    require(e.size() == factors_.size(), "element has " + std::to_string(e.size()) + " residues, group has " +
                                             std::to_string(factors_.size()) + " factors");
    int k = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      int r = ((e[i] % factors_[i]) + factors_[i]) % factors_[i];
      k = k * factors_[i] + r;
    }
    return k;
  }

  Element element(int k) const {
    Element e(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
      e[i] = k % factors_[i];
      k /= factors_[i];
    }
    return e;
  }

  int add(int a, int b) const { return add_[static_cast<std::size_t>(a) * order_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int order_of(int a) const { return elem_order_[a]; }
  int zero() const { return 0; }

  /// Indices of the subgroup generated by `gens`, sorted.
  std::vector<int> span(const std::vector<int>& gens) const {
    std::vector<char> seen(order_, 0);
    std::vector<int> frontier{0}, all{0};
    seen[0] = 1;
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int x : frontier)
        for (int g : gens) {
          int y = add(x, g);
          if (!seen[y]) {
            seen[y] = 1;
            next.push_back(y);
            all.push_back(y);
          }
        }
      frontier = std::move(next);
    }
    std::sort(all.begin(), all.end());
    return all;
  }

  bool generates(const std::vector<int>& gens) const { return static_cast<int>(span(gens).size()) == order_; }

  /// Every abelian group of order n, one per invariant-factor list.
  static std::vector<FiniteAbelianGroup> all_of_order(int n) {
    require(n >= 1, "group order must be positive");
    std::vector<std::vector<int>> lists;
    // build from the largest factor down: each next factor divides the previous one
    std::vector<int> acc;
    auto rec = [&](auto&& self, int rem, int prev) -> void {
      if (rem == 1) {
        lists.emplace_back(acc.rbegin(), acc.rend());
        return;
      }
      for (int d = rem; d >= 2; --d) {
        if (rem % d != 0 || (prev && prev % d != 0)) continue;
        acc.push_back(d);
        self(self, rem / d, d);
        acc.pop_back();
      }
    };
    rec(rec, n, 0);
    std::sort(lists.begin(), lists.end());
    std::vector<FiniteAbelianGroup> out;
    for (auto& l : lists) out.emplace_back(std::move(l));
    return out;
  }

  /// All automorphisms, each as the permutation of element indices. Brute
  /// force over images of the standard generators; cached per group.
  const std::vector<std::vector<int>>& automorphisms() const {
    std::call_once(aut_->once, [this] { aut_->perms = compute_automorphisms(); });
    return aut_->perms;
  }

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) { return a.factors_ == b.factors_; }

 private:
  void build_tables() {
    const auto n = static_cast<std::size_t>(order_);
    add_.assign(n * n, 0);
    neg_.assign(n, 0);
    elem_order_.assign(n, 1);
    std::vector<Element> els(n);
    for (int k = 0; k < order_; ++k) els[k] = element(k);
    for (int a = 0; a < order_; ++a) {
      Element ne(factors_.size());
      int ord = 1;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        ne[i] = (factors_[i] - els[a][i]) % factors_[i];
        int oi = factors_[i] / std::gcd(els[a][i], factors_[i]);
        ord = std::lcm(ord, oi);
      }
      neg_[a] = index(ne);
      elem_order_[a] = ord;
      for (int b = 0; b < order_; ++b) {
        int k = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i) k = k * factors_[i] + (els[a][i] + els[b][i]) % factors_[i];
        add_[static_cast<std::size_t>(a) * n + b] = k;
      }
    }
  }

  std::vector<std::vector<int>> compute_automorphisms() const {
    const std::size_t m = factors_.size();
    std::vector<int> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
      Element e(m, 0);
      e[i] = 1;
      basis[i] = index(e);
    }
    std::vector<std::vector<int>> out;
    std::vector<int> images;
    auto rec = [&](auto&& self, std::size_t i, int expected) -> void {
      if (i == m) {
        std::vector<int> perm(order_);
        for (int k = 0; k < order_; ++k) {
          Element e = element(k);
          int img = 0;
          for (std::size_t j = 0; j < m; ++j)
            for (int r = 0; r < e[j]; ++r) img = add(img, images[j]);
          perm[k] = img;
        }
        out.push_back(std::move(perm));
        return;
      }
      for (int x = 0; x < order_; ++x) {
        if (factors_[i] % order_of(x) != 0) continue;
        images.push_back(x);
        // images must stay independent: the span grows by exactly the factor d_i
        if (static_cast<int>(span(images).size()) == expected * factors_[i]) self(self, i + 1, expected * factors_[i]);
        images.pop_back();
      }
    };
    rec(rec, 0, 1);
    return out;
  }

  std::vector<int> factors_;
  int order_ = 1;
  std::vector<int> add_, neg_, elem_order_;
  struct AutCache {
    std::once_flag once;
    std::vector<std::vector<int>> perms;
  };
  std::shared_ptr<AutCache> aut_;
};

}  // namespace abelaut::covers
