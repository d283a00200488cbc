#pragma once

#include <optional>
#include <string>
#include <vector>

#include "../core/error.hpp"
#include "../core/rational.hpp"
#include "../core/report.hpp"
#include "json.hpp"

namespace abelaut::bounds {

/// (K^3, chi) of a minimal 3-fold of general type with K nef.
struct ThreefoldInvariants {
  long long k3 = 2;
  long long chi = 0;

  ThreefoldInvariants() = default;
  ThreefoldInvariants(long long k3_, long long chi_) : k3(k3_), chi(chi_) {
    require(k3 > 0, "K^3 must be positive, got " + std::to_string(k3));
    require(k3 % 2 == 0, "K^3 must be even, got " + std::to_string(k3));
    require(6 * chi <= k3, "chi <= K^3/6 fails: chi=" + std::to_string(chi) + ", K^3=" + std::to_string(k3));
    require(-2 * chi <= 5 * k3 + 2, "-chi <= 5/2 K^3 + 1 fails: chi=" + std::to_string(chi));
  }
};

/// Coefficients of p_m = a_m K^3 + b_m chi.
inline Rational plurigenus_k3_coefficient(const Rational& m) { return (2 * m - 1) * m * (m - 1) / 12; }
inline Rational plurigenus_chi_coefficient(const Rational& m) { return 1 - 2 * m; }

struct PlurigenusResult {
  Integer value = 0;
  bool integral = true;
  bool floor_holds = true;  // p_n >= 5 for n >= 3
  std::string flag;
};

inline PlurigenusResult plurigenus(const ThreefoldInvariants& inv, long long n) {
  require(n >= 2, "plurigenus formula needs n >= 2, got " + std::to_string(n));
  Rational p = plurigenus_k3_coefficient(n) * inv.k3 + plurigenus_chi_coefficient(n) * inv.chi;
  PlurigenusResult r;
  r.integral = is_integral(p);
  r.value = floor_of(p);
  if (!r.integral) r.flag = "p_" + std::to_string(n) + " = " + to_display_string(p) + " is not an integer";
  if (n >= 3 && p < 5) {
    r.floor_holds = false;
    r.flag += std::string(r.flag.empty() ? "" : "; ") + "p_" + std::to_string(n) + " = " + to_display_string(p) +
              " < 5";
  }
  return r;
}

/// Polynomial in n with exact coefficients, lowest degree first.
struct Poly {
  std::vector<Rational> c;

  Rational operator()(const Rational& n) const {
    Rational v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * n + *it;
    return v;
  }
  friend Poly operator+(Poly a, const Poly& b) {
    if (a.c.size() < b.c.size()) a.c.resize(b.c.size());
    for (std::size_t i = 0; i < b.c.size(); ++i) a.c[i] += b.c[i];
    return a;
  }
  friend Poly operator*(const Rational& s, Poly a) {
    for (auto& x : a.c) x *= s;
    return a;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + Rational(-1) * b; }

  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& x : c) j.push_back(to_fraction_string(x));
    return j;
  }
};

namespace detail {

// a_{cn} and b_{cn} as polynomials in n
inline Poly k3_coefficient_poly(long long c) {
  Rational cr(c);
  return Poly{{0, cr / 12, -3 * cr * cr / 12, 2 * cr * cr * cr / 12}};
}
inline Poly chi_coefficient_poly(long long c) { return Poly{{1, Rational(-2 * c)}}; }

}  // namespace detail

/// A quantity s K^3 + t at one end of the admissible chi range.
struct EndpointForm {
  std::string endpoint;
  Poly s, t;
};

/// Linear form A(n) K^3 + B(n) chi + C(n) together with its two chi endpoints:
/// chi = K^3/6 and chi = -(5/2) K^3 - 1.
struct LinearInvariantForm {
  Poly a, b, c;

  std::vector<EndpointForm> endpoints() const {
    return {{"chi=K3/6", a + Rational(1, 6) * b, c},
            {"chi=-(5/2)K3-1", a - Rational(5, 2) * b, c - b}};
  }

  Rational at(const Rational& n, const Rational& k3, const Rational& chi) const {
    return a(n) * k3 + b(n) * chi + c(n);
  }

  nlohmann::json to_json() const {
    return {{"k3_coefficient", a.to_json()}, {"chi_coefficient", b.to_json()}, {"constant", c.to_json()}};
  }
};

inline const Rational& epsilon() {
  static const Rational e(1, 530);
  return e;
}

/// (1-eps) p_{3n} + 14(1-4eps)/3 p_{2n} - 57 - p_{4n}: the LemmaId::l26 bound on
/// Sigma_n ⊂ Sigma_{2n} ⊂ Sigma_{3n} against dim H_{4n}.
inline LinearInvariantForm prop33_margin_form(const Rational& eps = epsilon()) {
  Rational kappa = Rational(14) * (1 - 4 * eps) / 3;
  LinearInvariantForm f;
  f.a = (1 - eps) * detail::k3_coefficient_poly(3) + kappa * detail::k3_coefficient_poly(2) -
        detail::k3_coefficient_poly(4);
  f.b = (1 - eps) * detail::chi_coefficient_poly(3) + kappa * detail::chi_coefficient_poly(2) -
        detail::chi_coefficient_poly(4);
  f.c = Poly{{-57}};
  return f;
}

/// 4 p_{2n} - p_{3n}, which must be >= 0 for the LemmaId::l26 size hypothesis.
inline LinearInvariantForm size_condition_form() {
  LinearInvariantForm f;
  f.a = Rational(4) * detail::k3_coefficient_poly(2) - detail::k3_coefficient_poly(3);
  f.b = Rational(4) * detail::chi_coefficient_poly(2) - detail::chi_coefficient_poly(3);
  f.c = Poly{{0}};
  return f;
}

/// Chain bound at index 3n: chain(Sigma_3n) < 12/((6n-1)(3n-2)) #Sigma_3n.
inline bool chain_condition(long long n, const Rational& eps = epsilon()) {
  if (n < 1) return false;
  Rational denom = Rational((6 * n - 1)) * Rational(3 * n - 2);
  return denom > 0 && Rational(12) / denom <= eps;
}

/// s K^3 + t over all K^3 >= 2: positive iff s >= 0 and 2s + t > 0.
inline bool positive_for_all_k3(const Rational& s, const Rational& t, bool strict = true) {
  return s >= 0 && (strict ? 2 * s + t > 0 : 2 * s + t >= 0);
}

struct MarginResult {
  std::string variant;
  Rational lhs, rhs, margin;
  std::vector<int> governing_cases;  // 1-based indices of the minimising lemma25_forms
  HypothesisReport trail;

  nlohmann::json to_json() const {
    return {{"variant", variant},
            {"lhs", to_fraction_string(lhs)},
            {"rhs", to_fraction_string(rhs)},
            {"margin", to_fraction_string(margin)},
            {"positive", margin > 0},
            {"governing_cases", governing_cases},
            {"trail", trail.to_json()}};
  }
};

inline MarginResult prop33_margin(long long n, const ThreefoldInvariants& inv, const Rational& eps = epsilon()) {
  require(n >= 2, "prop3.3 margin needs n >= 2");
  auto p = [&](long long m) { return plurigenus_k3_coefficient(m) * inv.k3 + plurigenus_chi_coefficient(m) * inv.chi; };
  MarginResult r;
  r.variant = "prop3.3(" + std::to_string(n) + ")";
  Rational kappa = Rational(14) * (1 - 4 * eps) / 3;
  r.lhs = (1 - eps) * p(3 * n) + kappa * p(2 * n) - 57;
  r.rhs = p(4 * n);
  r.margin = r.lhs - r.rhs;
  r.trail = HypothesisReport("prop3.3");
  r.trail.add("chain: 12/((6n-1)(3n-2)) <= eps", chain_condition(n, eps),
              to_display_string(Rational(12) / (Rational(6 * n - 1) * (3 * n - 2))));
  r.trail.add("4 p_2n >= p_3n", 4 * p(2 * n) >= p(3 * n),
              to_display_string(4 * p(2 * n)) + " vs " + to_display_string(p(3 * n)));
  r.trail.add("dim(Sigma_n) >= 4 (assumed)", true, "assumption");
  return r;
}

struct UniversalNResult {
  long long n_star = 0;
  nlohmann::json certificate;
};

/// Least n for which, at every admissible (K^3, chi), the chain and size
/// LemmaId::l26 hypotheses hold for Sigma_n ⊂ Sigma_2n ⊂ Sigma_3n and the
/// margin against dim H_4n is positive. Each condition is linear in chi, so
/// only the two chi endpoints are tested, and each endpoint is linear in
/// K^3 >= 2.
inline UniversalNResult universal_n(const Rational& eps = epsilon()) {
  require(eps > 0 && eps < Rational(1, 529), "universal_n needs 0 < eps < 1/529");
  auto margin = prop33_margin_form(eps);
  auto size = size_condition_form();

  struct Verdict {
    bool chain, size, margin;
    bool all() const { return chain && size && margin; }
  };
  auto check = [&](long long n) {
    Verdict v{chain_condition(n, eps), true, true};
    for (const auto& e : size.endpoints()) v.size = v.size && positive_for_all_k3(e.s(n), e.t(n), false);
    for (const auto& e : margin.endpoints()) v.margin = v.margin && positive_for_all_k3(e.s(n), e.t(n), true);
    return v;
  };

  long long chain_min = 1;
  while (!chain_condition(chain_min, eps)) ++chain_min;
  long long n = chain_min;
  while (!check(n).all()) ++n;

  UniversalNResult res;
  res.n_star = n;
  auto& cert = res.certificate;
  cert["epsilon"] = to_fraction_string(eps);
  cert["n_star"] = n;
  cert["leading_coefficient"] = to_fraction_string(margin.a.c.back());
  cert["leading_coefficient_expected"] = to_fraction_string((1 - 529 * eps) / 18);
  cert["chain_condition_least_n"] = chain_min;
  cert["margin_form"] = margin.to_json();
  cert["size_form"] = size.to_json();
  nlohmann::json ends = nlohmann::json::array();
  for (const auto& e : margin.endpoints())
    ends.push_back({{"endpoint", e.endpoint},
                    {"s", e.s.to_json()},
                    {"t", e.t.to_json()},
                    {"s_at_n_star", to_fraction_string(e.s(n))},
                    {"t_at_n_star", to_fraction_string(e.t(n))}});
  cert["margin_endpoints"] = ends;

  // minimality: an admissible integer point where n_star - 1 fails
  nlohmann::json witness = nullptr;
  if (n > 1) {
    long long m = n - 1;
    auto v = check(m);
    witness = {{"n", m}, {"chain", v.chain}, {"size", v.size}, {"margin", v.margin}};
    if (!v.chain) {
      witness["reason"] = "chain condition fails";
    } else {
      const auto& form = !v.size ? size : margin;
      bool strict = v.size;
      for (long long k3 = 2; k3 <= 2000000 && witness.find("k3") == witness.end(); k3 += 2) {
        for (long long chi : {k3 / 6, -(5 * k3) / 2 - 1}) {
          Rational val = form.at(m, k3, chi);
          if (strict ? val <= 0 : val < 0) {
            witness["reason"] = strict ? "margin not positive" : "4 p_2n < p_3n";
            witness["k3"] = k3;
            witness["chi"] = chi;
            witness["value"] = to_fraction_string(val);
            break;
          }
        }
        // jump straight to the region where a negative slope takes over
        if (witness.find("k3") == witness.end() && k3 == 1000) {
          for (const auto& e : form.endpoints()) {
            Rational s = e.s(m), t = e.t(m);
            if (s < 0) {
              Integer need = ceil_of(t / (-s));
              long long start = std::max<long long>(k3, to_int64(need) - 12);
              k3 = start - start % 6;
              break;
            }
          }
        }
      }
    }
  }
  cert["minimality_witness"] = witness;

  nlohmann::json sampled = nlohmann::json::array();
  bool sample_ok = true;
  for (long long k3 = 2; k3 <= 200; k3 += 2)
    for (long long chi : {k3 / 6, -(5 * k3) / 2 - 1}) {
      Rational val = margin.at(n, k3, chi);
      if (val <= 0) sample_ok = false;
    }
  cert["sampled_check"] = {{"k3_range", "2..200 even"}, {"all_positive", sample_ok}};
  return res;
}

struct ConstantResult {
  Integer c;
  long long n_star = 0, b = 0;
  nlohmann::json trail;
};

/// One explicit constant c with #G <= c K^3, assembled from the two branches
/// of the 3-fold argument with b = 4 n_star:
///   270 * 9 * 34 * b, and 335 * p_{b+4} with chi eliminated through
///   -chi <= (5/2) K^3 + 1 and the constant absorbed using K^3 >= 2.
inline ConstantResult threefold_constant() {
  ConstantResult r;
  r.n_star = universal_n().n_star;
  r.b = 4 * r.n_star;
  const long long branch_factor = 270LL * 9 * 34;
  Integer small_branch = Integer(branch_factor) * r.b;
  long long m = r.b + 4;
  Rational a_m = plurigenus_k3_coefficient(m);
  Rational coef = a_m + Rational(2 * m - 1) * Rational(5, 2) + Rational(2 * m - 1) / 2;
  Integer big_branch = ceil_of(335 * coef);
  r.c = std::max(small_branch, big_branch);
  r.trail = {
      {"n_star", r.n_star},
      {"b", r.b},
      {"branch_constant_270_9_34", branch_factor},
      {"branch_small_pg", small_branch.str()},
      {"p_b_plus_4_k3_coefficient", to_fraction_string(a_m)},
      {"p_b_plus_4_linear_bound", to_fraction_string(coef)},
      {"branch_large_pg", big_branch.str()},
      {"c", r.c.str()},
      {"example_family_floor", 25},
  };
  return r;
}

}  // namespace abelaut::bounds
