#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "../core/rational.hpp"
#include "../core/report.hpp"
#include "../lattice/operations.hpp"
#include "../lattice/triple.hpp"

namespace abelaut::lemma {

using lattice::ConvexTriple;
using lattice::LatticeSet;
using lattice::union_count;

enum class LemmaId { l24, l25, l26, l27 };

inline std::string to_string(LemmaId id) {
  switch (id) {
    case LemmaId::l24: return "2.4";
    case LemmaId::l25: return "2.5";
    case LemmaId::l26: return "2.6";
    case LemmaId::l27: return "2.7";
  }
  return "?";
}

inline LemmaId parse_lemma_id(const std::string& s) {
  if (s == "2.4") return LemmaId::l24;
  if (s == "2.5") return LemmaId::l25;
  if (s == "2.6") return LemmaId::l26;
  if (s == "2.7") return LemmaId::l27;
  throw PreconditionError("unknown lemma id '" + s + "' (expected 2.4, 2.5, 2.6 or 2.7)");
}

inline const Rational& epsilon_26() {
  static const Rational eps(1, 530);
  return eps;
}

/// The six linear forms whose minimum bounds the union count for LemmaId::l25.
inline std::vector<Rational> lemma25_forms(const Rational& n2, const Rational& n3) {
  return {
      n3 + 3 * n2 - 23,
      Rational(5, 6) * n3 + Rational(10, 3) * n2 - 10,
      Rational(5, 6) * n3 + Rational(13, 4) * n2 - 2,
      Rational(7, 12) * n3 + Rational(15, 4) * n2 - 6,
      Rational(1, 2) * n3 + 4 * n2 - 4,
      5 * n2 - 31,
  };
}

inline Rational bound_formula(LemmaId id, const Rational& n2, const Rational& n3) {
  require(n2 >= 0 && n3 >= 0, "bound_formula needs n2, n3 >= 0");
  switch (id) {
    case LemmaId::l25: {
      auto f = lemma25_forms(n2, n3);
      return *std::min_element(f.begin(), f.end());
    }
    case LemmaId::l26: {
      const Rational& e = epsilon_26();
      return (1 - e) * n3 + Rational(14) * (1 - 4 * e) / 3 * n2 - 57;
    }
    case LemmaId::l27: return Rational(9, 10) * n3 + Rational(16, 5) * n2 - 30;
    case LemmaId::l24: break;
  }
  throw PreconditionError("lemma " + to_string(id) + " has no closed-form bound");
}

struct VerificationOutcome {
  bool evaluated = false;  // false when the hypotheses fail: no claim is made
  std::size_t lhs_count = 0;
  Rational rhs_bound = 0;
  bool satisfied = true;
  std::optional<ConvexTriple> witness;
  std::uint64_t trial_seed = 0;
  std::vector<std::string> notes;
};

struct VerifyOptions {
  // Exact hull scans for integral and relative convexity. Off by default
  // because generated triples are convex by construction and the scan is slow.
  bool check_convexity = false;
  std::uint64_t trial_seed = 0;
};

namespace detail {

inline std::string ratio_text(std::size_t chain, std::size_t n) {
  return "chain=" + std::to_string(chain) + " n=" + std::to_string(n);
}

inline void convexity_checks(HypothesisReport& r, const ConvexTriple& t, bool exact) {
  if (!exact) return;
  auto v = lattice::validate(t);
  r.add("a1 integrally convex", v.integrally_convex[0]);
  r.add("a2 integrally convex", v.integrally_convex[1]);
  r.add("a3 integrally convex", v.integrally_convex[2]);
  r.add("a1 relatively convex in a2", v.a1_in_a2);
  r.add("a2 relatively convex in a3", v.a2_in_a3);
}

// chain < n / k, i.e. k * chain < n
inline void chain_check(HypothesisReport& r, const std::string& name, const LatticeSet& s, std::size_t k) {
  std::size_t c = lattice::longest_chain(s);
  r.add(name, k * c < s.size(), ratio_text(c, s.size()));
}

}  // namespace detail

inline HypothesisReport lemma_hypotheses(LemmaId id, const ConvexTriple& t, const VerifyOptions& opt = {}) {
  HypothesisReport r(to_string(id));
  r.add("nested a1 ⊆ a2 ⊆ a3", t.nested());
  if (!r.admissible() || t.a1.empty()) {
    r.add("a1 nonempty", !t.a1.empty());
    return r;
  }
  const std::size_t n2 = t.a2.size(), n3 = t.a3.size();
  const std::size_t d1 = lattice::dimension(t.a1), d2 = lattice::dimension(t.a2);
  switch (id) {
    case LemmaId::l24:
      r.add("dim(a1) >= 3", d1 >= 3, std::to_string(d1));
      break;
    case LemmaId::l25:
      detail::convexity_checks(r, t, opt.check_convexity);
      r.add("dim(a1) = 3", d1 == 3, std::to_string(d1));
      r.add("#a2 >= 21", n2 >= 21, std::to_string(n2));
      r.add("#a3 <= 2 #a2", n3 <= 2 * n2, std::to_string(n3) + " vs " + std::to_string(n2));
      detail::chain_check(r, "chain(a3) < #a3/6", t.a3, 6);
      detail::chain_check(r, "chain(a2) < #a2/4", t.a2, 4);
      break;
    case LemmaId::l26:
      detail::convexity_checks(r, t, opt.check_convexity);
      r.add("dim(a1) >= 4", d1 >= 4, std::to_string(d1));
      r.add("4 #a2 >= #a3", 4 * n2 >= n3, std::to_string(n2) + " vs " + std::to_string(n3));
      detail::chain_check(r, "chain(a3) < #a3/530", t.a3, 530);
      break;
    case LemmaId::l27:
      detail::convexity_checks(r, t, opt.check_convexity);
      r.add("dim(a1) >= 2", d1 >= 2, std::to_string(d1));
      r.add("dim(a2) >= 3", d2 >= 3, std::to_string(d2));
      detail::chain_check(r, "chain(a3) < #a3/10", t.a3, 10);
      detail::chain_check(r, "chain(a2) < #a2/5", t.a2, 5);
      break;
  }
  return r;
}

inline ConvexTriple arrange_triple(const ConvexTriple& t, std::size_t axis) {
  return {lattice::arrangement(t.a1, axis), lattice::arrangement(t.a2, axis),
          lattice::arrangement(t.a3, axis), t.witness_regions};
}

/// Hypothesis report plus, when admissible, the comparison the lemma asserts.
/// For 2.4 the comparison is union_count before against after arranging,
/// along each axis separately and along every axis in turn.
inline std::pair<HypothesisReport, VerificationOutcome> verify_lemma(LemmaId id, const ConvexTriple& t,
                                                                     const VerifyOptions& opt = {}) {
  auto report = lemma_hypotheses(id, t, opt);
  VerificationOutcome out;
  out.trial_seed = opt.trial_seed;
  if (!report.admissible()) return {std::move(report), std::move(out)};
  out.evaluated = true;
  out.lhs_count = union_count(t);

  if (id == LemmaId::l24) {
    std::size_t worst = 0;
    for (std::size_t axis = 0; axis < t.dim(); ++axis) {
      std::size_t after = union_count(arrange_triple(t, axis));
      worst = std::max(worst, after);
      if (after > out.lhs_count)
        out.notes.push_back("axis " + std::to_string(axis) + ": " + std::to_string(out.lhs_count) + " < " +
                            std::to_string(after));
    }
    ConvexTriple cur = t;
    std::size_t before = out.lhs_count;
    for (std::size_t axis = 0; axis < t.dim(); ++axis) {
      cur = arrange_triple(cur, axis);
      std::size_t after = union_count(cur);
      if (after > before)
        out.notes.push_back("sequential step " + std::to_string(axis) + ": " + std::to_string(before) + " < " +
                            std::to_string(after));
      before = after;
    }
    out.rhs_bound = Rational(worst);
    out.satisfied = out.notes.empty();
  } else {
    out.rhs_bound = bound_formula(id, Rational(t.a2.size()), Rational(t.a3.size()));
    out.satisfied = Rational(out.lhs_count) >= out.rhs_bound;
  }
  if (!out.satisfied) out.witness = t;
  return {std::move(report), std::move(out)};
}

enum class Relation { greater, equal, less };

inline std::string to_string(Relation r) {
  switch (r) {
    case Relation::greater: return ">";
    case Relation::equal: return "=";
    case Relation::less: return "<";
  }
  return "?";
}

struct IdentityComparison {
  std::string name;
  Integer measured, expression;
  Relation relation = Relation::equal;
};

namespace detail {

inline std::size_t count_on_axis(const LatticeSet& a, std::size_t axis) {
  std::size_t c = 0;
  for (const auto& p : a) {
    bool on = true;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (i != axis && p[i] != 0) on = false;
    c += on;
  }
  return c;
}

inline IdentityComparison compare(std::string name, const Integer& measured, const Integer& expr) {
  Relation r = measured > expr ? Relation::greater : measured == expr ? Relation::equal : Relation::less;
  return {std::move(name), measured, expr, r};
}

inline IdentityComparison planar_identity(const LatticeSet& a, const std::string& name) {
  Integer n = a.size(), mx = count_on_axis(a, 0), my = count_on_axis(a, 1);
  return compare(name, Integer(lattice::midpoint_count(a, a)), 4 * n - 2 * (mx + my) + 1);
}

}  // namespace detail

/// Measured mid-point counts next to the closed forms behind lemma25_forms.
/// Input: a planar staircase, or a 3-d staircase whose points have z = 0,
/// or z = 1 and y = 0.
inline std::vector<IdentityComparison> check_intermediate_identities(const LatticeSet& a) {
  require(!a.empty(), "identity check needs a nonempty set");
  require(lattice::is_staircase(a), "identity check needs a staircase set");
  if (a.dim() == 2) return {detail::planar_identity(a, "planar")};
  require(a.dim() == 3, "identity check is defined in dimension 2 or 3");
  std::vector<lattice::Point> base;
  Integer t = 0;
  for (const auto& p : a) {
    require(p[2] <= 1 && (p[2] == 0 || p[1] == 0), "3-d identity needs points with z = 0, or z = 1 and y = 0");
    if (p[2] == 0)
      base.push_back({p[0], p[1]});
    else
      ++t;
  }
  LatticeSet a0(2, std::move(base));
  Integer n = a.size(), mx = detail::count_on_axis(a, 0), my = detail::count_on_axis(a, 1);
  return {detail::planar_identity(a0, "planar (z=0 slice)"),
          detail::compare("layered", Integer(lattice::midpoint_count(a, a)),
                          (t - 1) * (my - 3) + 5 * n - 2 * (mx + my) - 3)};
}

}  // namespace abelaut::lemma
