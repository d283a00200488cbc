#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "../core/rational.hpp"
#include "../core/report.hpp"
#include "group.hpp"
#include "json.hpp"

namespace abelaut::covers {

/// A Galois cover C -> C/G with G abelian, given by the group, the genus
/// gamma of the quotient and the local monodromy g_1, ..., g_k.
struct CoverDatum {
  FiniteAbelianGroup group;
  int gamma = 0;
  std::vector<Element> branch;

  std::vector<int> branch_indices() const {
    std::vector<int> idx;
    for (const auto& e : branch) idx.push_back(group.index(e));
    return idx;
  }

  // ramification indices, descending
  std::vector<int> signature() const {
    std::vector<int> r;
    for (int i : branch_indices()) r.push_back(group.order_of(i));
    std::sort(r.rbegin(), r.rend());
    return r;
  }
};

/// Throws unless the datum obeys the cover invariants: nonzero branch
/// elements summing to 0, generating G when gamma = 0.
inline void validate(const CoverDatum& d) {
  require(d.gamma >= 0, "quotient genus must be >= 0");
  int sum = 0;
  auto idx = d.branch_indices();
  for (int i : idx) {
    require(i != 0, "branch elements must be nonzero");
    sum = d.group.add(sum, i);
  }
  require(sum == 0, "branch elements must sum to 0");
  if (d.gamma == 0) require(d.group.generates(idx), "with gamma = 0 the branch elements must generate G");
}

/// g with 2g - 2 = N (2 gamma - 2 + sum (1 - 1/r_i)), or nothing when g is
/// not a nonnegative integer.
inline std::optional<long long> hurwitz_genus(long long order, int gamma, const std::vector<int>& r) {
  Rational t = 2 * gamma - 2;
  for (int ri : r) t += 1 - Rational(1, ri);
  Rational g = 1 + Rational(order) * t / 2;
  if (!is_integral(g) || g < 0) return std::nullopt;
  return to_int64(numerator_of(g));
}

inline std::optional<long long> hurwitz_genus(const CoverDatum& d) {
  validate(d);
  return hurwitz_genus(d.group.order(), d.gamma, d.signature());
}

namespace detail {

inline std::vector<int> prime_factors(int n) {
  std::vector<int> ps;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace detail

/// Divisibility conditions a genus-0 abelian cover must satisfy, on the
/// signature alone. (iv) is only checked when the group is assumed cyclic.
inline HypothesisReport lemma43_admissible(long long order, const std::vector<int>& r, bool assume_cyclic) {
  HypothesisReport rep("4.3");
  const int n = static_cast<int>(order);
  bool all_i = true;
  std::string bad;
  for (std::size_t j = 0; j < r.size(); ++j) {
    long long m = 1;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (i != j) m *= r[i];
    if (m % n != 0) {
      all_i = false;
      bad += (bad.empty() ? "" : ",") + ("m" + std::to_string(j + 1) + "=" + std::to_string(m));
    }
  }
  rep.add("(i) every m_j divisible by |G|", all_i, bad.empty() ? "ok" : bad);

  auto count_divisible = [&](long long q) {
    return std::count_if(r.begin(), r.end(), [q](int x) { return x % q == 0; });
  };
  bool all_ii = true;
  std::string bad2;
  for (int p : detail::prime_factors(n))
    if (count_divisible(p) < 2) {
      all_ii = false;
      bad2 += (bad2.empty() ? "p=" : ",") + std::to_string(p);
    }
  rep.add("(ii) each prime of |G| divides two r_i", all_ii, bad2.empty() ? "ok" : bad2);

  long long l = 1;
  for (int x : r) l = std::lcm(l, static_cast<long long>(x));
  rep.add("(iii) lcm(r_i) divides |G|", n % l == 0, "lcm=" + std::to_string(l));

  if (assume_cyclic) {
    bool eq = l == n;
    std::string bad4 = eq ? "" : "lcm=" + std::to_string(l) + "≠" + std::to_string(n);
    bool powers = true;
    for (int p : detail::prime_factors(n)) {
      long long q = 1;
      for (int m = n; m % p == 0; m /= p) q *= p;
      if (count_divisible(q) < 2) {
        powers = false;
        bad4 += (bad4.empty() ? "" : ";") + (std::to_string(q) + " divides fewer than two r_i");
      }
    }
    rep.add("(iv) cyclic: |G| = lcm and each p^t divides two r_i", eq && powers, bad4.empty() ? "ok" : bad4);
  }
  return rep;
}

inline HypothesisReport lemma43_admissible(const CoverDatum& d, bool assume_cyclic) {
  require(d.gamma == 0, "lemma43_admissible needs quotient genus 0");
  validate(d);
  return lemma43_admissible(d.group.order(), d.signature(), assume_cyclic);
}

/// Subgroup as a sorted list of element indices.
struct Subgroup {
  std::vector<int> elements;
  std::vector<Element> generators;
};

inline Subgroup subgroup_generated_by(const FiniteAbelianGroup& g, const std::vector<Element>& gens) {
  std::vector<int> idx;
  for (const auto& e : gens) idx.push_back(g.index(e));
  return {g.span(idx), gens};
}

/// Rejects element lists that are not closed under addition.
inline Subgroup subgroup_from_elements(const FiniteAbelianGroup& g, const std::vector<Element>& els) {
  std::vector<int> idx;
  for (const auto& e : els) idx.push_back(g.index(e));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  require(!idx.empty() && idx.front() == 0, "subgroup must contain 0");
  for (int a : idx)
    for (int b : idx)
      require(std::binary_search(idx.begin(), idx.end(), g.add(a, b)), "element list is not closed under addition");
  return {idx, els};
}

/// Genus of C/H, from the cover C/H -> C/G with group G/H: the index at
/// g_i is the least m with m g_i in H.
inline std::optional<long long> quotient_genus(const CoverDatum& d, const Subgroup& h) {
  validate(d);
  const auto& g = d.group;
  auto in_h = [&](int x) { return std::binary_search(h.elements.begin(), h.elements.end(), x); };
  require(in_h(0), "subgroup must contain 0");
  for (int a : h.elements)
    for (int b : h.elements) require(in_h(g.add(a, b)), "H is not a subgroup");
  require(g.order() % static_cast<int>(h.elements.size()) == 0, "H is not a subgroup");
  long long q = g.order() / static_cast<long long>(h.elements.size());
  std::vector<int> r;
  for (int x : d.branch_indices()) {
    int m = 1;
    for (int y = x; !in_h(y); y = g.add(y, x)) ++m;
    if (m > 1) r.push_back(m);
  }
  return hurwitz_genus(q, d.gamma, r);
}

struct Witness {
  Element involution;
  long long quotient_genus = 0;
  std::string kind() const { return quotient_genus == 0 ? "hyperelliptic" : quotient_genus == 1 ? "bi-elliptic" : "none"; }
};

/// Quotient genus by every order-2 subgroup of G, in element-index order.
inline std::vector<Witness> involution_quotients(const CoverDatum& d) {
  std::vector<Witness> out;
  for (int x = 1; x < d.group.order(); ++x) {
    if (d.group.order_of(x) != 2) continue;
    auto qg = quotient_genus(d, Subgroup{{0, x}, {d.group.element(x)}});
    if (qg) out.push_back({d.group.element(x), *qg});
  }
  return out;
}

/// A genus-0 quotient if one exists, else a genus-1 quotient, else nothing.
/// Decided only through order-2 subgroups of G.
inline std::optional<Witness> hyperelliptic_witness(const CoverDatum& d) {
  auto all = involution_quotients(d);
  for (const auto& w : all)
    if (w.quotient_genus == 0) return w;
  for (const auto& w : all)
    if (w.quotient_genus == 1) return w;
  return std::nullopt;
}

/// The family y^3 = x^{3m} - 1: G = Z/3 x Z/3m, signature (3m, 3m, 3).
inline CoverDatum example_family_49(int m) {
  require(m >= 2, "example family needs m >= 2");
  FiniteAbelianGroup g({3, 3 * m});
  CoverDatum d{g, 0, {{0, 1}, {1, 3 * m - 1}, {2, 0}}};
  validate(d);
  return d;
}

inline nlohmann::json to_json(const CoverDatum& d) {
  nlohmann::json branch = nlohmann::json::array();
  for (const auto& e : d.branch) branch.push_back(e);
  return {{"invariant_factors", d.group.invariant_factors()},
          {"gamma", d.gamma},
          {"order", d.group.order()},
          {"branch", branch},
          {"signature", d.signature()}};
}

inline CoverDatum datum_from_json(const nlohmann::json& j) {
  try {
    CoverDatum d{FiniteAbelianGroup(j.at("invariant_factors").get<std::vector<int>>()), j.at("gamma").get<int>(), {}};
    for (const auto& e : j.at("branch")) d.branch.push_back(e.get<Element>());
    validate(d);
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("bad cover datum JSON: ") + e.what());
  }
}

}  // namespace abelaut::covers
