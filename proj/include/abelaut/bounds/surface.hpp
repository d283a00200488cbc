#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../core/error.hpp"
#include "../core/rational.hpp"
#include "../core/report.hpp"
#include "json.hpp"

namespace abelaut::bounds {

/// Numerical invariants of a minimal surface of general type plus the
/// geometric facts the bound theorems are conditioned on. Geometry is never
/// computed here: every flag is taken as given. An absent pencil genus means
/// the surface has no pencil of that genus.
struct SurfaceInvariants {
  long long k2 = 0;
  std::optional<long long> chi;
  std::set<int> pencil_genera;              // genera of pencils (fibrations) on S
  std::optional<int> two_pencils_genus;     // two distinct pencils of this genus
  std::optional<int> canonical_image_dim;   // 1 or 2
  std::optional<int> canonical_pencil_genus;
  bool canonical_map_birational = false;
  bool simply_connected = false;
  bool even = false;                        // K = 2L
  bool phi_l_generically_finite = false;
  bool phi_2l_birational = false;
  std::vector<long long> complete_intersection_degrees;  // type (d_1..d_{N-2}) in P^N

  bool has_pencil(int g) const { return all_pencils().count(g) > 0; }

  std::set<int> all_pencils() const {
    std::set<int> s = pencil_genera;
    if (two_pencils_genus) s.insert(*two_pencils_genus);
    if (canonical_pencil_genus) s.insert(*canonical_pencil_genus);
    return s;
  }

  bool is_complete_intersection() const { return !complete_intersection_degrees.empty(); }
  long long ambient_dim() const { return static_cast<long long>(complete_intersection_degrees.size()) + 2; }
  long long degree_sum() const {
    long long s = 0;
    for (auto d : complete_intersection_degrees) s += d;
    return s;
  }
  /// K = (sum d_i - N - 1) H on a complete intersection.
  long long ci_canonical_multiple() const { return degree_sum() - ambient_dim() - 1; }
  Integer ci_k2() const {
    Integer k = ci_canonical_multiple();
    Integer prod = 1;
    for (auto d : complete_intersection_degrees) prod *= d;
    return k * k * prod;
  }

  /// chi if given, else the least value allowed by K^2 <= 9 chi and chi >= 1.
  long long chi_floor() const {
    if (chi) return *chi;
    return std::max<long long>(1, (k2 + 8) / 9);
  }

  void validate() const {
    require(k2 > 0, "K^2 must be positive, got " + std::to_string(k2));
    if (chi) {
      require(*chi >= 1, "chi >= 1 fails: chi=" + std::to_string(*chi));
      require(k2 <= 9 * *chi, "Bogomolov-Miyaoka-Yau K^2 <= 9 chi fails: K^2=" + std::to_string(k2) +
                                  ", chi=" + std::to_string(*chi));
    }
    for (int g : all_pencils()) require(g >= 2, "pencil genus must be >= 2, got " + std::to_string(g));
    if (canonical_image_dim)
      require(*canonical_image_dim == 1 || *canonical_image_dim == 2, "canonical image dimension must be 1 or 2");
    if (canonical_pencil_genus) {
      require(canonical_image_dim.value_or(1) == 1, "a canonical pencil needs canonical image dimension 1");
      require(*canonical_pencil_genus >= 2 && *canonical_pencil_genus <= 5,
              "canonical pencil genus must lie in 2..5");
    }
    if (canonical_map_birational) require(canonical_image_dim.value_or(2) == 2, "a birational canonical map has image dimension 2");
    if (is_complete_intersection()) {
      for (auto d : complete_intersection_degrees) require(d >= 2, "complete intersection degrees must be >= 2");
      require(ci_canonical_multiple() > 0, "complete intersection is not of general type");
      require(ci_k2() == k2, "K^2=" + std::to_string(k2) + " disagrees with the complete intersection value " +
                                 ci_k2().str());
    }
  }

  /// Parse key=value pairs. Recognised keys: K2, chi, pencils (comma list),
  /// genus2_pencil, two_pencils, canonical_dim, canonical_pencil_genus,
  /// birational, simply_connected, even, phiL_finite, phi2L_birational,
  /// ci (comma list of degrees), degree (surface in P^3).
  static SurfaceInvariants from_pairs(const std::map<std::string, std::string>& kv);

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["K2"] = k2;
    j["chi"] = chi ? nlohmann::json(*chi) : nlohmann::json(nullptr);
    j["pencils"] = std::vector<int>(pencil_genera.begin(), pencil_genera.end());
    if (two_pencils_genus) j["two_pencils"] = *two_pencils_genus;
    if (canonical_image_dim) j["canonical_dim"] = *canonical_image_dim;
    if (canonical_pencil_genus) j["canonical_pencil_genus"] = *canonical_pencil_genus;
    if (canonical_map_birational) j["birational"] = true;
    if (simply_connected) j["simply_connected"] = true;
    if (even) j["even"] = true;
    if (phi_l_generically_finite) j["phiL_finite"] = true;
    if (phi_2l_birational) j["phi2L_birational"] = true;
    if (is_complete_intersection()) j["ci"] = complete_intersection_degrees;
    return j;
  }
};

namespace detail {

inline long long parse_integer(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception&) {
    throw PreconditionError("value of " + key + " is not an integer: '" + v + "'");
  }
  require(used == v.size(), "value of " + key + " is not an integer: '" + v + "'");
  return x;
}

inline bool parse_flag(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw PreconditionError("value of " + key + " is not a boolean: '" + v + "'");
}

inline std::vector<long long> parse_list(const std::string& key, const std::string& v) {
  std::vector<long long> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_integer(key, item));
  require(!out.empty(), "empty list for " + key);
  return out;
}

}  // namespace detail

inline SurfaceInvariants SurfaceInvariants::from_pairs(const std::map<std::string, std::string>& kv) {
  SurfaceInvariants s;
  bool have_k2 = false;
  for (const auto& [key, v] : kv) {
    if (key == "K2" || key == "k2") {
      s.k2 = detail::parse_integer(key, v);
      have_k2 = true;
    } else if (key == "chi") {
      s.chi = detail::parse_integer(key, v);
    } else if (key == "pencils") {
      for (auto g : detail::parse_list(key, v)) s.pencil_genera.insert(static_cast<int>(g));
    } else if (key == "genus2_pencil") {
      if (detail::parse_flag(key, v)) s.pencil_genera.insert(2);
    } else if (key == "two_pencils") {
      s.two_pencils_genus = static_cast<int>(detail::parse_integer(key, v));
    } else if (key == "canonical_dim") {
      s.canonical_image_dim = static_cast<int>(detail::parse_integer(key, v));
    } else if (key == "canonical_pencil_genus") {
      s.canonical_pencil_genus = static_cast<int>(detail::parse_integer(key, v));
      if (!s.canonical_image_dim) s.canonical_image_dim = 1;
    } else if (key == "birational") {
      s.canonical_map_birational = detail::parse_flag(key, v);
    } else if (key == "simply_connected") {
      s.simply_connected = detail::parse_flag(key, v);
    } else if (key == "even") {
      s.even = detail::parse_flag(key, v);
    } else if (key == "phiL_finite") {
      s.phi_l_generically_finite = detail::parse_flag(key, v);
    } else if (key == "phi2L_birational") {
      s.phi_2l_birational = detail::parse_flag(key, v);
    } else if (key == "ci" || key == "degree") {
      s.complete_intersection_degrees = detail::parse_list(key, v);
      require(key != "degree" || s.complete_intersection_degrees.size() == 1, "degree takes one value");
    } else {
      throw PreconditionError("unknown invariant '" + key + "'");
    }
  }
  if (s.is_complete_intersection()) {
    long long ci = to_int64(s.ci_k2());
    if (!have_k2) s.k2 = ci;
    // a surface of degree d in P^3 has chi = C(d-1, 3) + 1
    if (!s.chi && s.complete_intersection_degrees.size() == 1) {
      long long d = s.complete_intersection_degrees[0];
      s.chi = (d - 1) * (d - 2) * (d - 3) / 6 + 1;
    }
    have_k2 = true;
  }
  require(have_k2, "K2 is required");
  s.validate();
  return s;
}

/// dim H^0(iK) = i(i-1)/2 K^2 + chi for i >= 2.
inline Rational surface_plurigenus(long long i, long long k2, long long chi) {
  require(i >= 2, "surface plurigenus formula needs i >= 2");
  return Rational(i * (i - 1) / 2) * k2 + chi;
}

/// One theorem evaluated against the invariants.
struct SourceEvaluation {
  std::string source;
  std::string formula;
  HypothesisReport trail;
  Rational value = 0;  // meaningful only when trail.admissible()

  bool applies() const { return trail.admissible(); }

  nlohmann::json to_json() const {
    nlohmann::json j{{"source", source}, {"formula", formula}, {"applies", applies()}, {"trail", trail.to_json()}};
    j["value"] = applies() ? nlohmann::json(to_display_string(value)) : nlohmann::json(nullptr);
    return j;
  }
};

struct BoundResult {
  std::optional<Rational> value;
  std::string source;  // "no theorem applies" when value is empty
  std::vector<SourceEvaluation> evaluations;
  std::vector<std::string> assumptions;
  std::vector<std::string> findings;

  std::vector<std::string> applicable_sources() const {
    std::vector<std::string> out;
    for (const auto& e : evaluations)
      if (e.applies()) out.push_back(e.source);
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json ev = nlohmann::json::array();
    for (const auto& e : evaluations) ev.push_back(e.to_json());
    return {{"value", value ? nlohmann::json(to_display_string(*value)) : nlohmann::json(nullptr)},
            {"source", source},
            {"applicable_sources", applicable_sources()},
            {"assumptions", assumptions},
            {"findings", findings},
            {"evaluations", ev}};
  }
};

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline SourceEvaluation linear_source(std::string source, const Rational& a, const Rational& b, long long k2) {
  SourceEvaluation e;
  e.source = std::move(source);
  e.formula = to_display_string(a) + "K^2+" + to_display_string(b);
  e.trail = HypothesisReport(e.source);
  e.value = a * k2 + b;
  return e;
}

}  // namespace detail

/// Every bound whose hypotheses hold, with the least one reported.
inline BoundResult surface_bound(const SurfaceInvariants& s) {
  s.validate();
  using detail::linear_source;
  using detail::yes_no;
  const long long k = s.k2;
  const std::string ks = std::to_string(k);
  const long long chi_lo = s.chi_floor();
  const std::string chi_text = s.chi ? std::to_string(*s.chi) : ">= " + std::to_string(chi_lo) + " (from K^2 <= 9 chi)";
  BoundResult r;
  r.assumptions.push_back("chi >= 1 for surfaces of general type");
  if (!s.chi) r.assumptions.push_back("chi not given: only chi >= max(1, ceil(K^2/9)) is used");
  r.assumptions.push_back("geometric hypotheses (pencils, canonical map, evenness) are taken from the input");
  auto& ev = r.evaluations;

  {
    auto e = linear_source("Thm 7.7 (K^2=1)", 0, 270, k);
    e.trail.add("K^2 = 1", k == 1, ks);
    ev.push_back(e);
    e = linear_source("Thm 7.7 (2<=K^2<=3)", 200, 22, k);
    e.trail.add("2 <= K^2 <= 3", k >= 2 && k <= 3, ks);
    ev.push_back(e);
    e = linear_source("Thm 7.7 (4<=K^2<=63)", 114, 24, k);
    e.trail.add("4 <= K^2 <= 63", k >= 4 && k <= 63, ks);
    ev.push_back(e);
  }
  {
    auto e = linear_source("Thm 7.1", 36, 24, k);
    e.trail.add("chi >= 8", chi_lo >= 8, chi_text);
    ev.push_back(e);
  }
  {
    auto e = linear_source("Thm 6.5", 24, 256, k);
    e.trail.add("K^2 >= 181", k >= 181, ks);
    for (int g = 3; g <= 5; ++g) {
      if (!s.has_pencil(g)) {
        e.trail.add("no pencil of genus " + std::to_string(g) + ", or slope condition", true, "no pencil");
        continue;
      }
      bool ok = s.chi && Rational(k) >= Rational(12 * (g - 1), g + 5) * *s.chi;
      e.trail.add("pencil of genus " + std::to_string(g) + ": K^2 >= " + to_display_string(Rational(12 * (g - 1), g + 5)) +
                      " chi",
                  ok, s.chi ? ks + " vs chi=" + std::to_string(*s.chi) : "chi unknown");
    }
    ev.push_back(e);
  }
  {
    bool small_pencil = false;
    for (int g : s.all_pencils()) small_pencil = small_pencil || g <= 5;
    for (bool birational : {false, true}) {
      auto e = birational ? linear_source("Thm 6.1 (birational)", 18, 18, k) : linear_source("Thm 6.1", 24, 16, k);
      e.trail.add("canonical image dimension 2", s.canonical_image_dim == 2,
                  s.canonical_image_dim ? std::to_string(*s.canonical_image_dim) : "unknown");
      e.trail.add("chi >= 14", chi_lo >= 14, chi_text);
      e.trail.add("K^2 >= 82", k >= 82, ks);
      e.trail.add("no pencil of genus <= 5", !small_pencil, yes_no(!small_pencil));
      if (birational) e.trail.add("canonical map birational", s.canonical_map_birational, yes_no(s.canonical_map_birational));
      ev.push_back(e);
    }
  }
  {
    auto e = linear_source("Prop 5.4", 16, 0, k);
    bool two = s.two_pencils_genus.has_value();
    e.trail.add("two pencils of genus g >= 2", two, two ? std::to_string(*s.two_pencils_genus) : "no");
    if (two) {
      long long g = *s.two_pencils_genus;
      e.trail.add("K^2 > 4(g-1)^2", k > 4 * (g - 1) * (g - 1), ks + " vs " + std::to_string(4 * (g - 1) * (g - 1)));
    }
    ev.push_back(e);
  }
  {
    struct P { const char* name; int g; long long k_gt; Rational slope; long long c; };
    for (const P& p : {P{"Prop 5.5", 3, 16, Rational(3), 64}, P{"Prop 5.6", 4, 36, Rational(4), 144},
                       P{"Prop 5.7", 5, 64, Rational(24, 5), 256}}) {
      auto e = linear_source(p.name, 24, p.c, k);
      e.trail.add("pencil of genus " + std::to_string(p.g), s.has_pencil(p.g), yes_no(s.has_pencil(p.g)));
      e.trail.add("K^2 > " + std::to_string(p.k_gt), k > p.k_gt, ks);
      bool slope = s.chi && Rational(k) >= p.slope * *s.chi;
      e.trail.add("K^2 >= " + to_display_string(p.slope) + " chi", slope,
                  s.chi ? "chi=" + std::to_string(*s.chi) : "chi unknown");
      ev.push_back(e);
    }
  }
  {
    auto e = linear_source("Prop 5.8", Rational(25, 2), 469, k);
    e.trail.add("chi >= 21", chi_lo >= 21, chi_text);
    e.trail.add("canonical image dimension 1", s.canonical_image_dim == 1,
                s.canonical_image_dim ? std::to_string(*s.canonical_image_dim) : "unknown");
    bool headline_applies = e.applies();
    Rational headline = e.value;
    ev.push_back(e);
    if (s.canonical_pencil_genus) {
      int g = *s.canonical_pencil_genus;
      SourceEvaluation c;
      switch (g) {
        case 2: c = linear_source("Prop 5.8 (g=2)", Rational(25, 2), 100, k); break;
        case 3: c = linear_source("Prop 5.8 (g=3)", Rational(72, 7), 376 + Rational(8, 21), k); break;
        case 4: c = linear_source("Prop 5.8 (g=4)", 12, 496, k); break;
        default: c = linear_source("Prop 5.8 (g=5)", 12, 432, k); break;
      }
      c.trail.add("chi >= 21", chi_lo >= 21, chi_text);
      c.trail.add("canonical map composed with a pencil of genus " + std::to_string(g), true, "input");
      if (g == 4 && Rational(8 * k + 640) > Rational(12 * k + 496))
        r.findings.push_back("Prop 5.8 g=4: printed step 8K^2+640 <= 12K^2+496 needs K^2 >= 36, fails at K^2=" + ks);
      if (headline_applies && c.applies() && c.value > headline)
        r.findings.push_back(c.source + " value " + to_display_string(c.value) + " exceeds the headline " +
                             to_display_string(headline));
      ev.push_back(c);
    }
  }
  {
    auto e = linear_source("Chen (genus 2 pencil)", Rational(25, 2), 100, k);
    e.trail.add("genus 2 fibration", s.has_pencil(2), yes_no(s.has_pencil(2)));
    e.trail.add("K^2 >= 9", k >= 9, ks);
    ev.push_back(e);
  }
  {
    bool fib = false;
    for (int g : s.all_pencils()) fib = fib || (g >= 3 && g <= 8);
    auto e = linear_source("Thm 8.1", 12, 24, k);
    e.trail.add("simply connected", s.simply_connected, yes_no(s.simply_connected));
    e.trail.add("even (K = 2L)", s.even, yes_no(s.even));
    e.trail.add("phi_L generically finite", s.phi_l_generically_finite, yes_no(s.phi_l_generically_finite));
    e.trail.add("phi_2L birational", s.phi_2l_birational, yes_no(s.phi_2l_birational));
    e.trail.add("no fibration of genus 3..8", !fib, yes_no(!fib));
    e.trail.add("K^2 > 196", k > 196, ks);
    ev.push_back(e);
  }
  {
    auto e = linear_source("Cor 8.2", 12, 24, k);
    bool ci = s.is_complete_intersection();
    e.trail.add("smooth complete intersection", ci, ci ? nlohmann::json(s.complete_intersection_degrees).dump() : "no");
    if (ci) {
      long long odd = s.degree_sum() - s.ambient_dim();
      e.trail.add("sum d_i - N odd", odd % 2 != 0, std::to_string(odd));
    }
    e.trail.add("K^2 > 196", k > 196, ks);
    ev.push_back(e);
  }
  {
    SourceEvaluation e;
    e.source = "Thm 8.3";
    e.formula = "3d^2(d-2)+9";
    e.trail = HypothesisReport(e.source);
    bool p3 = s.complete_intersection_degrees.size() == 1;
    long long d = p3 ? s.complete_intersection_degrees[0] : 0;
    e.trail.add("surface in P^3", p3, p3 ? "degree " + std::to_string(d) : "no");
    e.trail.add("degree d >= 5", d >= 5, std::to_string(d));
    e.value = Rational(3 * d * d * (d - 2) + 9);
    ev.push_back(e);
  }

  for (const auto& e : ev) {
    if (!e.applies()) continue;
    if (!r.value || e.value < *r.value) {
      r.value = e.value;
      r.source = e.source;
    }
  }
  if (!r.value) r.source = "no theorem applies";
  return r;
}

/// Lower bound for chi_top(F') + 2g - 2 over a singular fibre: g-1 when the
/// fibre is a double curve of genus (g+1)/2, g+2 otherwise.
inline long long singular_fiber_floor(long long g, bool is_double_curve_of_half_genus) {
  require(g >= 2, "genus must be >= 2, got " + std::to_string(g));
  if (is_double_curve_of_half_genus) {
    require(g % 2 == 1, "a double curve of genus (g+1)/2 needs g odd, got " + std::to_string(g));
    long long v = g - 1;
    if (g != 3 && v < 4) throw std::logic_error("singular_fiber_floor: floor below 4");
    return v;
  }
  return g + 2;
}

/// Bound table over a (K^2, chi) grid as CSV. Cells violating K^2 <= 9 chi
/// are skipped.
inline std::string bound_table_csv(long long k2_lo, long long k2_hi, long long chi_lo, long long chi_hi,
                                   const SurfaceInvariants& flags = {}) {
  require(k2_lo >= 1 && k2_lo <= k2_hi, "bad K^2 range");
  require(chi_lo >= 1 && chi_lo <= chi_hi, "bad chi range");
  std::ostringstream out;
  out << "K2,chi,value,source,applicable\n";
  for (long long k = k2_lo; k <= k2_hi; ++k)
    for (long long c = chi_lo; c <= chi_hi; ++c) {
      if (k > 9 * c) continue;
      SurfaceInvariants s = flags;
      s.k2 = k;
      s.chi = c;
      if (s.is_complete_intersection()) continue;
      auto r = surface_bound(s);
      std::string srcs;
      for (const auto& a : r.applicable_sources()) srcs += (srcs.empty() ? "" : ";") + a;
      out << k << ',' << c << ',' << (r.value ? to_display_string(*r.value) : "") << ",\"" << r.source << "\",\""
          << srcs << "\"\n";
    }
  return out.str();
}

}  // namespace abelaut::bounds
