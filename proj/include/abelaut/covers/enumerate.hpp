#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "../core/rational.hpp"
#include "cover.hpp"

namespace abelaut::covers {

/// a*g + b, parsed from text such as "3g+6", "4g-4", "2g+2", "g", "5/2g-1".
struct LinearBound {
  Rational a = 0, b = 0;
  std::string text;

  Rational at(long long g) const { return a * g + b; }

  static LinearBound parse(const std::string& raw) {
    std::string s;
    for (char c : raw)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    LinearBound lb;
    lb.text = s;
    auto pos = s.find('g');
    try {
      if (pos == std::string::npos) {
        lb.b = parse_rational(s);
        return lb;
      }
      std::string coef = s.substr(0, pos), rest = s.substr(pos + 1);
      if (!coef.empty() && coef.back() == '*') coef.pop_back();
      lb.a = coef.empty() || coef == "+" ? Rational(1) : coef == "-" ? Rational(-1) : parse_rational(coef);
      if (!rest.empty()) {
        if (rest[0] == '+') rest.erase(0, 1);
        lb.b = parse_rational(rest);
      }
    } catch (const std::exception&) {
      throw PreconditionError("cannot parse bound '" + raw + "' (expected a form like 3g+6)");
    }
    return lb;
  }
};

struct EnumerationFilters {
  std::optional<int> gamma;
  int kmin = 0;
  std::optional<int> kmax;
  bool require_no_hyperelliptic_witness = false;
  bool assume_cyclic = false;
  std::optional<std::vector<int>> only_group;  // invariant factors
};

struct EnumerationRecord {
  CoverDatum datum;
  long long genus = 0;
  std::string bound_tested;
  bool exceeds = false;
  std::vector<Witness> witnesses;  // every order-2 subgroup with its quotient genus

  auto key() const {
    return std::make_tuple(genus, datum.group.order(), datum.group.invariant_factors(), datum.gamma, datum.signature(),
                           datum.branch);
  }

  nlohmann::json to_json() const {
    auto j = covers::to_json(datum);
    j["genus"] = genus;
    j["bound_tested"] = bound_tested;
    j["exceeds"] = exceeds;
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : witnesses)
      ws.push_back({{"subgroup", nlohmann::json::array({w.involution})}, {"quotient_genus", w.quotient_genus}, {"kind", w.kind()}});
    j["witnesses"] = ws;
    return j;
  }
};

namespace detail {

// Breadth-first labelling of G from 0 along the generators in order, then
// the table label(x) -> label(x + g_i). Equal tables <=> the tuples differ
// by an automorphism (the tuples generate G).
inline std::vector<int> cayley_labels(const FiniteAbelianGroup& g, const std::vector<int>& gens) {
  std::vector<int> label(g.order(), -1), order{0};
  label[0] = 0;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (int x : gens) {
      int y = g.add(order[head], x);
      if (label[y] < 0) {
        label[y] = static_cast<int>(order.size());
        order.push_back(y);
      }
    }
  std::vector<int> table;
  table.reserve(order.size() * gens.size());
  for (int v : order)
    for (int x : gens) table.push_back(label[g.add(v, x)]);
  return table;
}

// Calls f on every reordering of `t` that permutes only within runs of equal order.
template <class F>
void block_permutations(const FiniteAbelianGroup& g, std::vector<int> t, F&& f) {
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i;
    while (j < t.size() && g.order_of(t[j]) == g.order_of(t[i])) ++j;
    std::sort(t.begin() + static_cast<std::ptrdiff_t>(i), t.begin() + static_cast<std::ptrdiff_t>(j));
    blocks.push_back({i, j});
    i = j;
  }
  auto rec = [&](auto&& self, std::size_t b) -> void {
    if (b == blocks.size()) {
      f(t);
      return;
    }
    auto first = t.begin() + static_cast<std::ptrdiff_t>(blocks[b].first);
    auto last = t.begin() + static_cast<std::ptrdiff_t>(blocks[b].second);
    do self(self, b + 1);
    while (std::next_permutation(first, last));
  };
  rec(rec, 0);
}

// tuple sorted by descending order, then index
inline std::vector<int> order_sorted(const FiniteAbelianGroup& g, std::vector<int> t) {
  std::sort(t.begin(), t.end(), [&](int x, int y) {
    return g.order_of(x) != g.order_of(y) ? g.order_of(x) > g.order_of(y) : x < y;
  });
  return t;
}

/// Canonical key of a branch multiset up to Aut(G), plus the representative
/// tuple that realises it.
inline std::pair<std::vector<int>, std::vector<int>> canonical_branch(const FiniteAbelianGroup& g,
                                                                      const std::vector<int>& t, bool generating) {
  std::vector<int> best_key, best_tuple;
  if (generating) {
    block_permutations(g, order_sorted(g, t), [&](const std::vector<int>& p) {
      auto key = cayley_labels(g, p);
      if (best_key.empty() || key < best_key) {
        best_key = std::move(key);
        best_tuple = p;
      }
    });
    return {best_key, best_tuple};
  }
  for (const auto& perm : g.automorphisms()) {
    std::vector<int> img;
    for (int x : t) img.push_back(perm[x]);
    img = order_sorted(g, img);
    if (best_key.empty() || img < best_key) best_key = img;
  }
  if (best_key.empty()) best_key = order_sorted(g, t);
  return {best_key, best_key};
}

// Multisets of element orders (descending) of size k drawn from `orders`.
inline void signatures(const std::vector<int>& orders, int k, std::vector<int>& acc, std::size_t from,
                       std::vector<std::vector<int>>& out) {
  if (static_cast<int>(acc.size()) == k) {
    out.push_back(acc);
    return;
  }
  for (std::size_t i = from; i < orders.size(); ++i) {
    acc.push_back(orders[i]);
    signatures(orders, k, acc, i, out);
    acc.pop_back();
  }
}

}  // namespace detail

/// Every abelian cover datum, up to automorphisms of G, with genus in
/// [gmin, gmax] and |G| strictly above the bound at that genus.
///
/// Group orders run up to 4 gmax + 4, the bound for abelian groups acting on
/// curves of genus >= 2. For each order, gamma and k are capped by
/// 2g - 2 >= N(2 gamma - 2 + k/2). With no_hyperelliptic, data admitting a
/// genus-0 quotient by an involution in G are dropped; above 3g + 6 this is
/// exact, because a hyperelliptic involution outside G would generate with G
/// an abelian group of order 2|G| > 4g + 4.
inline std::vector<EnumerationRecord> enumerate_extremal(int gmin, int gmax, const LinearBound& bound,
                                                         const EnumerationFilters& f = {}) {
  std::vector<EnumerationRecord> out;
  if (gmin > gmax || gmax < 0) return out;
  const int nmax = 4 * std::max(gmax, 1) + 4;
  for (int n = 1; n <= nmax; ++n) {
    for (const auto& g : FiniteAbelianGroup::all_of_order(n)) {
      if (f.assume_cyclic && !g.is_cyclic()) continue;
      if (f.only_group && *f.only_group != g.invariant_factors()) continue;
      std::map<int, std::vector<int>> by_order;
      for (int x = 1; x < n; ++x) by_order[g.order_of(x)].push_back(x);
      std::vector<int> orders;
      for (auto it = by_order.rbegin(); it != by_order.rend(); ++it) orders.push_back(it->first);

      // 2gmax - 2 >= N (2 gamma - 2)
      const int gamma_max = gmax >= 1 ? 1 + (gmax - 1) / n : 0;
      for (int gamma = 0; gamma <= std::max(gamma_max, 0); ++gamma) {
        if (f.gamma && *f.gamma != gamma) continue;
        // k/2 <= (2gmax - 2)/N - 2gamma + 2
        Rational kcap = 2 * (Rational(2 * gmax - 2, n) - 2 * gamma + 2);
        if (kcap < 0) continue;
        int kmax = static_cast<int>(to_int64(floor_of(kcap)));
        if (f.kmax) kmax = std::min(kmax, *f.kmax);
        if (n == 1) kmax = 0;
        std::set<std::pair<int, std::vector<int>>> seen;
        for (int k = f.kmin; k <= kmax; ++k) {
          std::vector<std::vector<int>> sigs;
          std::vector<int> acc;
          detail::signatures(orders, k, acc, 0, sigs);
          for (const auto& sig : sigs) {
            auto genus = hurwitz_genus(n, gamma, sig);
            if (!genus || *genus < gmin || *genus > gmax) continue;
            if (!(Rational(n) > bound.at(*genus))) continue;
            if (gamma == 0 && k == 0) continue;

            auto consider = [&](const std::vector<int>& tuple) {
              bool gen = g.generates(tuple);
              if (gamma == 0 && !gen) return;
              auto [key, rep] = detail::canonical_branch(g, tuple, gen);
              if (!seen.insert({gen ? 1 : 0, key}).second) return;
              EnumerationRecord rec;
              rec.datum = CoverDatum{g, gamma, {}};
              for (int x : rep) rec.datum.branch.push_back(g.element(x));
              rec.genus = *genus;
              rec.bound_tested = bound.text;
              rec.exceeds = true;
              rec.witnesses = involution_quotients(rec.datum);
              if (f.require_no_hyperelliptic_witness &&
                  std::any_of(rec.witnesses.begin(), rec.witnesses.end(),
                              [](const Witness& w) { return w.quotient_genus == 0; }))
                return;
              out.push_back(std::move(rec));
            };

            if (k == 0) {
              consider({});
              continue;
            }
            // first k-1 entries non-decreasing within equal-order runs; the last closes the sum
            std::vector<int> tuple(static_cast<std::size_t>(k));
            auto rec = [&](auto&& self, int pos, int sum) -> void {
              if (pos == k - 1) {
                int last = g.neg(sum);
                if (last == 0 || g.order_of(last) != sig[static_cast<std::size_t>(k - 1)]) return;
                tuple[static_cast<std::size_t>(pos)] = last;
                consider(tuple);
                return;
              }
              const auto& choices = by_order[sig[static_cast<std::size_t>(pos)]];
              std::size_t start = 0;
              if (pos > 0 && sig[static_cast<std::size_t>(pos - 1)] == sig[static_cast<std::size_t>(pos)])
                start = static_cast<std::size_t>(
                    std::lower_bound(choices.begin(), choices.end(), tuple[static_cast<std::size_t>(pos - 1)]) -
                    choices.begin());
              for (std::size_t c = start; c < choices.size(); ++c) {
                tuple[static_cast<std::size_t>(pos)] = choices[c];
                self(self, pos + 1, g.add(sum, choices[c]));
              }
            };
            rec(rec, 0, 0);
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.key() < y.key(); });
  return out;
}

/// (g, |G|, k, signature): the form in which exceptional data are listed.
struct SignatureTuple {
  long long genus = 0;
  int order = 0;
  std::vector<int> r;

  friend auto operator<=>(const SignatureTuple&, const SignatureTuple&) = default;
  std::string to_string() const {
    return "{" + std::to_string(genus) + ", " + std::to_string(order) + ", " + std::to_string(r.size()) + ", (" +
           detail::join(r) + ")}";
  }
};

inline SignatureTuple signature_of(const EnumerationRecord& rec) {
  return {rec.genus, rec.datum.group.order(), rec.datum.signature()};
}

struct SignatureComparison {
  std::vector<SignatureTuple> matched, missing, extra;  // missing: expected, not found
  bool exact() const { return missing.empty() && extra.empty(); }
};

inline SignatureComparison compare_signatures(const std::vector<EnumerationRecord>& found,
                                              const std::vector<SignatureTuple>& expected) {
  std::set<SignatureTuple> f, e(expected.begin(), expected.end());
  for (const auto& r : found) f.insert(signature_of(r));
  SignatureComparison c;
  for (const auto& s : f) (e.count(s) ? c.matched : c.extra).push_back(s);
  for (const auto& s : e)
    if (!f.count(s)) c.missing.push_back(s);
  return c;
}

}  // namespace abelaut::covers
