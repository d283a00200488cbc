#pragma once

#include <algorithm>
#include <string>

#include "../lemma/verify.hpp"
#include "surface.hpp"
#include "threefold.hpp"

namespace abelaut::bounds {

enum class MarginVariant { prop33, prop63, lemma72, lemma74, lemma76_12, lemma76_16 };

struct MarginSpec {
  MarginVariant variant = MarginVariant::prop63;
  long long n = 0;  // prop3.3 only

  bool threefold() const { return variant == MarginVariant::prop33; }

  std::string name() const {
    switch (variant) {
      case MarginVariant::prop33: return "prop3.3(" + std::to_string(n) + ")";
      case MarginVariant::prop63: return "prop6.3";
      case MarginVariant::lemma72: return "lemma7.2";
      case MarginVariant::lemma74: return "lemma7.4";
      case MarginVariant::lemma76_12: return "lemma7.6-12";
      case MarginVariant::lemma76_16: return "lemma7.6-16";
    }
    return "?";
  }

  /// "prop3.3(20)", "prop6.3", "lemma7.2", "lemma7.4", "lemma7.6-12", "lemma7.6-16".
  static MarginSpec parse(const std::string& text) {
    MarginSpec m;
    if (text == "prop6.3") m.variant = MarginVariant::prop63;
    else if (text == "lemma7.2") m.variant = MarginVariant::lemma72;
    else if (text == "lemma7.4") m.variant = MarginVariant::lemma74;
    else if (text == "lemma7.6-12") m.variant = MarginVariant::lemma76_12;
    else if (text == "lemma7.6-16") m.variant = MarginVariant::lemma76_16;
    else if (text.rfind("prop3.3(", 0) == 0 && text.size() > 9 && text.back() == ')') {
      m.variant = MarginVariant::prop33;
      m.n = detail::parse_integer("prop3.3", text.substr(8, text.size() - 9));
      require(m.n >= 2, "prop3.3 needs n >= 2");
    } else {
      throw PreconditionError("unknown margin variant '" + text + "'");
    }
    return m;
  }
};

inline MarginResult decomposability_margin(const MarginSpec& spec, const ThreefoldInvariants& inv) {
  require(spec.threefold(), spec.name() + " is a surface margin; got 3-fold invariants");
  return prop33_margin(spec.n, inv);
}

/// LHS - RHS with LHS the lattice-lemma lower bound for the union of the
/// basic sets and RHS the dimension of the target pluricanonical space.
inline MarginResult decomposability_margin(const MarginSpec& spec, const SurfaceInvariants& s) {
  require(!spec.threefold(), "prop3.3 is a 3-fold margin; got surface invariants");
  require(s.chi.has_value(), spec.name() + " needs chi");
  s.validate();
  const long long k = s.k2, chi = *s.chi;
  auto h = [&](long long i) { return surface_plurigenus(i, k, chi); };
  MarginResult r;
  r.variant = spec.name();
  r.trail = HypothesisReport(spec.name());
  r.trail.add("K^2 <= 9 chi", k <= 9 * chi, std::to_string(k) + " vs " + std::to_string(9 * chi));

  auto lemma25 = [&](long long i2, long long i3, long long target) {
    Rational n2 = h(i2), n3 = h(i3);
    auto forms = lemma::lemma25_forms(n2, n3);
    r.lhs = *std::min_element(forms.begin(), forms.end());
    for (std::size_t i = 0; i < forms.size(); ++i)
      if (forms[i] == r.lhs) r.governing_cases.push_back(static_cast<int>(i) + 1);
    r.rhs = h(target);
    r.trail.add("#A2 >= 21", n2 >= 21, to_display_string(n2));
    r.trail.add("#A3 <= 2 #A2", n3 <= 2 * n2, to_display_string(n3) + " vs " + to_display_string(2 * n2));
    r.trail.add("a2, a3 chain conditions for 2.5 (from the pencil, assumed)", true, "assumption");
    r.trail.add("dim(Sigma) = 3 (assumed)", true, "assumption");
  };

  switch (spec.variant) {
    case MarginVariant::prop63: {
      Rational n2 = h(2), n3 = h(3);
      r.lhs = lemma::bound_formula(lemma::LemmaId::l27, n2, n3);
      r.rhs = h(4);
      r.trail.add("a2, a3 chain conditions for 2.7 (from the pencil, assumed)", true, "assumption");
      r.trail.add("dim(Sigma_2) >= 2, dim(Sigma_3) >= 3 (assumed)", true, "assumption");
      break;
    }
    case MarginVariant::lemma72: {
      const long long d = 4;
      Rational n3 = h(3);
      r.lhs = Rational(d + 1) * (n3 - Rational(d, 2));
      r.rhs = h(6);
      r.trail.add("#Sigma_3 >= d+1 = 5", n3 >= d + 1, to_display_string(n3));
      r.trail.add("dim(Sigma_3) = d = 4 (assumed)", true, "assumption");
      break;
    }
    case MarginVariant::lemma74: lemma25(3, 4, 6); break;
    case MarginVariant::lemma76_12: lemma25(6, 8, 12); break;
    case MarginVariant::lemma76_16: lemma25(8, 11, 16); break;
    case MarginVariant::prop33: break;
  }
  r.margin = r.lhs - r.rhs;
  return r;
}

}  // namespace abelaut::bounds
