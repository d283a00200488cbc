#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../bounds/margin.hpp"
#include "../bounds/surface.hpp"
#include "../bounds/threefold.hpp"
#include "../covers/golden.hpp"
#include "../lemma/suite.hpp"
#include "naive.hpp"

namespace abelaut::testing {

struct CriterionResult {
  std::string id;
  std::string title;
  bool pass = false;
  bool supplementary = false;
  std::string detail;
  double seconds = 0;

  std::string line() const {
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << ' ' << id << ' ' << title << (supplementary ? " (supplementary)" : "") << ": "
       << detail << " [" << std::fixed;
    os.precision(2);
    os << seconds << "s]";
    return os.str();
  }

  nlohmann::json to_json() const {
    return {{"id", id}, {"title", title}, {"pass", pass}, {"supplementary", supplementary}, {"detail", detail}};
  }
};

struct AcceptanceOptions {
  std::string data_dir;     // holds golden/
  std::string witness_dir;  // violations are written here
  std::uint64_t seed = 20020;
};

namespace detail {

template <class F>
CriterionResult timed(std::string id, std::string title, F&& body) {
  CriterionResult r;
  r.id = std::move(id);
  r.title = std::move(title);
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail += std::string(r.detail.empty() ? "" : "; ") + "exception: " + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::string join_strings(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

template <class T>
std::string list_of(const std::vector<T>& v) {
  std::vector<std::string> s;
  for (const auto& x : v) s.push_back(x.to_string());
  return "[" + join_strings(s) + "]";
}

inline std::vector<covers::EnumerationRecord> run_golden(const covers::GoldenRun& g) {
  return covers::enumerate_extremal(g.gmin, g.gmax, g.bound, g.filters);
}

// Minimal CSV: comma separated, double quotes around fields that contain commas.
inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::map<std::string, std::string> parse_pairs(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    auto eq = tok.find('=');
    require(eq != std::string::npos && eq > 0, "expected key=value, got '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

inline LatticeSet random_set(std::mt19937_64& rng, std::size_t dim, std::size_t max_points, Coord side) {
  std::uniform_int_distribution<std::size_t> count(1, max_points);
  std::uniform_int_distribution<Coord> coord(-side, side);
  std::size_t n = count(rng);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    Point p(dim);
    for (auto& x : p) x = coord(rng);
    pts.push_back(p);
  }
  return LatticeSet(dim, pts);
}

inline LatticeSet random_subset(std::mt19937_64& rng, const LatticeSet& a, double keep) {
  std::bernoulli_distribution coin(keep);
  std::vector<Point> pts;
  for (const auto& p : a)
    if (coin(rng)) pts.push_back(p);
  if (pts.empty()) pts.push_back(a[0]);
  return LatticeSet(a.dim(), pts);
}

}  // namespace detail

inline CriterionResult criterion_fermat(const AcceptanceOptions& o) {
  return detail::timed("1", "non-hyperelliptic data above 3g+6, genus 2..8", [&](CriterionResult& r) {
    auto g = covers::load_golden(o.data_dir + "/golden/fermat_3g6.json");
    auto found = detail::run_golden(g);
    auto cmp = covers::compare_golden(found, g);
    std::vector<covers::GoldenEntry> got;
    for (const auto& rec : found) got.push_back(covers::GoldenEntry::of(rec));
    r.pass = cmp.exact() && found.size() == 2;
    r.detail = std::to_string(found.size()) + " records " + detail::list_of(got);
    if (!cmp.exact()) r.detail += "; missing " + detail::list_of(cmp.missing) + " extra " + detail::list_of(cmp.extra);
  });
}

inline CriterionResult criterion_variable_moduli(const AcceptanceOptions& o) {
  return detail::timed("2", "gamma=0, k>=4 data above 3g-3, genus 3..6", [&](CriterionResult& r) {
    auto g = covers::load_golden(o.data_dir + "/golden/variable_moduli_3g3.json");
    auto found = detail::run_golden(g);
    auto cmp = covers::compare_golden(found, g);
    std::size_t without = 0;
    for (const auto& rec : found)
      if (!covers::hyperelliptic_witness(rec.datum)) ++without;
    r.pass = cmp.exact() && without == 0;
    std::ostringstream os;
    os << found.size() << " records, " << without << " without an involution of quotient genus <= 1";
    if (!cmp.exact()) os << "; search vs golden: missing " << detail::list_of(cmp.missing) << " extra " << detail::list_of(cmp.extra);
    if (cmp.printed) {
      const auto& p = *cmp.printed;
      os << "; printed list: matched " << p.matched.size() << "/" << g.printed.size();
      if (!p.missing.empty()) os << "; FLAGGED not realisable " << detail::list_of(p.missing);
      if (!p.extra.empty()) os << "; FLAGGED absent from printed list " << detail::list_of(p.extra);
    }
    r.detail = os.str();
  });
}

inline CriterionResult criterion_cyclic(const AcceptanceOptions& o) {
  return detail::timed("3", "cyclic gamma=0, k>=4 data above 2g+2, genus 3..8", [&](CriterionResult& r) {
    auto g = covers::load_golden(o.data_dir + "/golden/cyclic_2g2.json");
    auto found = detail::run_golden(g);
    r.pass = found.empty() && g.expected.empty();
    r.detail = std::to_string(found.size()) + " records";
  });
}

inline CriterionResult criterion_family() {
  return detail::timed("4", "family Z/3m x Z/3, m=2..6", [&](CriterionResult& r) {
    r.pass = true;
    std::vector<std::string> parts;
    for (int m = 2; m <= 6; ++m) {
      auto d = covers::example_family_49(m);
      covers::validate(d);
      auto g = covers::hurwitz_genus(d);
      bool ok = g && *g == 3 * m - 2 && d.group.order() == 9 * m && d.group.order() == 3 * *g + 6 &&
                covers::lemma43_admissible(d, false).admissible();
      r.pass = r.pass && ok;
      parts.push_back("m=" + std::to_string(m) + ":g=" + (g ? std::to_string(*g) : "?") + ",|G|=" +
                      std::to_string(d.group.order()) + (ok ? "" : " BAD"));
    }
    r.detail = detail::join_strings(parts);
  });
}

inline CriterionResult criterion_arrangement_suite(const AcceptanceOptions& o) {
  return detail::timed("5", "arrangement inequality, 10000 triples in dims 3 and 4", [&](CriterionResult& r) {
    std::size_t trials = 0, admissible = 0, violations = 0, oracle_mismatch = 0, failures = 0;
    for (std::size_t dim : {3u, 4u}) {
      lemma::SuiteOptions so;
      so.lemma = lemma::LemmaId::l24;
      so.dim = dim;
      so.seed = o.seed + dim;
      for (std::size_t i = 0; i < 5000; ++i) {
        ++trials;
        auto seed = trial_seed(so.seed, i);
        lemma::ConvexTriple t;
        try {
          t = lemma::generate_for(so, i, seed);
        } catch (const PreconditionError&) {
          ++failures;
          continue;
        }
        lemma::VerifyOptions vo;
        vo.trial_seed = seed;
        auto [report, out] = lemma::verify_lemma(lemma::LemmaId::l24, t, vo);
        if (!report.admissible()) continue;
        ++admissible;
        // both sides again by brute force
        std::size_t before = naive_union_count(t);
        bool naive_ok = before == out.lhs_count;
        auto arrange = [&](const lattice::ConvexTriple& x, std::size_t axis) {
          auto f = [&](const LatticeSet& s) {
            auto a = naive_arrangement(s, axis);
            return LatticeSet(s.dim(), std::vector<Point>(a.begin(), a.end()));
          };
          return lattice::ConvexTriple{f(x.a1), f(x.a2), f(x.a3), {}};
        };
        for (std::size_t axis = 0; axis < dim; ++axis)
          if (naive_union_count(arrange(t, axis)) > before) naive_ok = false;
        auto cur = t;
        std::size_t prev = before;
        for (std::size_t axis = 0; axis < dim; ++axis) {
          cur = arrange(cur, axis);
          std::size_t now = naive_union_count(cur);
          if (now > prev) naive_ok = false;
          prev = now;
        }
        if (!out.satisfied || !naive_ok) {
          ++violations;
          if (!o.witness_dir.empty()) lemma::write_witness(o.witness_dir, lemma::LemmaId::l24, t, report, out);
        }
        if (out.satisfied != naive_ok) ++oracle_mismatch;
      }
    }
    r.pass = admissible == 10000 && violations == 0 && oracle_mismatch == 0;
    r.detail = std::to_string(trials) + " trials, " + std::to_string(admissible) + " admissible, " +
               std::to_string(violations) + " violations, " + std::to_string(oracle_mismatch) +
               " oracle disagreements, " + std::to_string(failures) + " generation failures";
  });
}

inline CriterionResult lemma_suite(const std::string& id, lemma::LemmaId lemma, std::size_t dim, std::size_t want,
                                   std::size_t cap, const AcceptanceOptions& o, std::size_t min_size = 0,
                                   std::size_t max_size = 0, Coord side = 0, std::uint64_t salt = 0) {
  std::string title = "lemma " + lemma::to_string(lemma) + " bound, " + std::to_string(want) + " admissible triples, dim " +
                      std::to_string(dim);
  if (min_size) title += ", #a3 in [" + std::to_string(min_size) + "," + std::to_string(max_size) + "]";
  return detail::timed(id, title, [&](CriterionResult& r) {
    lemma::SuiteOptions so;
    so.lemma = lemma;
    so.dim = dim;
    so.trials = cap;
    so.stop_after_admissible = want;
    so.seed = o.seed * 31 + static_cast<std::uint64_t>(lemma) + salt;
    so.min_size = min_size;
    so.max_size = max_size;
    so.side = side;
    so.witness_dir = o.witness_dir;
    auto res = lemma::run_suite(so);
    r.pass = res.admissible >= want && res.violations == 0;
    r.detail = std::to_string(res.attempts) + " attempts, " + std::to_string(res.admissible) + " admissible, " +
               std::to_string(res.violations) + " violations";
    if (!res.witness_paths.empty()) r.detail += ", witnesses: " + detail::join_strings(res.witness_paths);
  });
}

/// The chain hypothesis 530 chain(a3) < #a3 against the dim-4 size window.
/// An integrally convex set with all chains <= c has at most c^d points: two
/// points congruent mod c span a segment holding c+1 lattice points. So an
/// admissible a3 in dimension d needs #a3 > 530 c with #a3 <= c^d.
inline std::string chain_window_analysis(std::size_t dim, std::size_t max_size) {
  std::size_t c = (max_size - 1) / 530;  // largest chain allowed at #a3 <= max_size
  std::size_t cap = 1;
  for (std::size_t i = 0; i < dim; ++i) cap *= c;
  std::size_t least_c = 1;
  auto pow_d = [dim](std::size_t x) {
    std::size_t v = 1;
    for (std::size_t i = 0; i < dim; ++i) v *= x;
    return v;
  };
  while (pow_d(least_c) <= 530 * least_c) ++least_c;
  return "#a3 <= " + std::to_string(max_size) + " forces chain <= " + std::to_string(c) + " and then #a3 <= " +
         std::to_string(c) + "^" + std::to_string(dim) + " = " + std::to_string(cap) +
         "; admissible sets in dim " + std::to_string(dim) + " need chain >= " + std::to_string(least_c) +
         " and #a3 > " + std::to_string(530 * least_c);
}

inline CriterionResult criterion_large_dim4(const AcceptanceOptions& o) {
  auto r = lemma_suite("6c", lemma::LemmaId::l26, 4, 50, 100, o, 1100, 3000);
  r.detail += "; " + chain_window_analysis(4, 3000);
  return r;
}

inline CriterionResult criterion_thresholds() {
  return detail::timed("7", "decomposability thresholds", [&](CriterionResult& r) {
    using namespace bounds;
    auto surf = [](long long k, long long c) {
      SurfaceInvariants s;
      s.k2 = k;
      s.chi = c;
      return s;
    };
    auto margin = [&](const char* v, long long k, long long c) {
      return decomposability_margin(MarginSpec::parse(v), surf(k, c)).margin;
    };
    std::vector<std::string> bad;
    for (long long c = 8; c <= 120; ++c)
      for (long long k = 1; k <= 9 * c; ++k)
        if (margin("lemma7.4", k, c) <= 0) bad.push_back("lemma7.4 (" + std::to_string(k) + "," + std::to_string(c) + ")");
    auto m74 = decomposability_margin(MarginSpec::parse("lemma7.4"), surf(63, 7));
    bool gov6 = std::find(m74.governing_cases.begin(), m74.governing_cases.end(), 6) != m74.governing_cases.end();
    if (!(m74.margin <= 0 && gov6)) bad.push_back("lemma7.4 at chi=7 does not fail in the 5#A2-31 case");
    for (long long c = 14; c <= 120; ++c)
      for (long long k = 1; k <= 9 * c; ++k)
        if (margin("prop6.3", k, c) <= 0) bad.push_back("prop6.3 (" + std::to_string(k) + "," + std::to_string(c) + ")");
    if (margin("prop6.3", 117, 13) > 0) bad.push_back("prop6.3 positive at (117,13)");
    for (long long c = 1; c <= 40; ++c)
      for (long long k = 1; k <= 9 * c; k += 7)
        if ((margin("lemma7.2", k, c) > 0) != (c >= 3)) bad.push_back("lemma7.2 threshold at chi=" + std::to_string(c));
    Rational m12 = margin("lemma7.6-12", 4, 1), m16 = margin("lemma7.6-16", 2, 1);
    if (m12 <= 0) bad.push_back("lemma7.6-12 at (4,1)");
    if (m16 <= 0) bad.push_back("lemma7.6-16 at (2,1)");
    r.pass = bad.empty();
    r.detail = "lemma7.4 margin at (72,8) = " + to_display_string(margin("lemma7.4", 72, 8)) + ", at (63,7) = " +
               to_display_string(m74.margin) + "; prop6.3 at (126,14) = " + to_display_string(margin("prop6.3", 126, 14)) +
               ", at (117,13) = " + to_display_string(margin("prop6.3", 117, 13)) + "; lemma7.6-12 = " +
               to_display_string(m12) + ", lemma7.6-16 = " + to_display_string(m16);
    if (!bad.empty()) r.detail += "; failures: " + std::to_string(bad.size()) + " first " + bad.front();
  });
}

inline CriterionResult criterion_universal_n() {
  return detail::timed("8", "universal N and explicit constant", [&](CriterionResult& r) {
    auto u = bounds::universal_n();
    const auto& cert = u.certificate;
    bool lead = cert["leading_coefficient"] == "1/9540";
    bool chain20 = cert["chain_condition_least_n"] == 20 && bounds::chain_condition(20) && !bounds::chain_condition(19);
    bool minimal = !cert["minimality_witness"].is_null() &&
                   (!cert["minimality_witness"]["chain"].get<bool>() || cert["minimality_witness"].contains("k3"));
    bool sampled = cert["sampled_check"]["all_positive"].get<bool>();
    auto c = bounds::threefold_constant();
    r.pass = lead && chain20 && minimal && sampled && c.c >= 25;
    r.detail = "n_star=" + std::to_string(u.n_star) + ", leading coefficient " + cert["leading_coefficient"].get<std::string>() +
               ", chain forces n>=" + std::to_string(cert["chain_condition_least_n"].get<long long>()) +
               ", witness at n_star-1: " + cert["minimality_witness"].dump() + ", c=" + c.c.str();
  });
}

inline CriterionResult criterion_bound_table(const AcceptanceOptions& o) {
  return detail::timed("9", "surface bound table against golden values", [&](CriterionResult& r) {
    std::ifstream in(o.data_dir + "/golden/surface_bounds.csv");
    require(static_cast<bool>(in), "cannot open surface_bounds.csv");
    std::string line;
    std::getline(in, line);
    std::size_t rows = 0;
    std::vector<std::string> bad;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto f = detail::split_csv(line);
      require(f.size() == 4, "bad golden row: " + line);
      ++rows;
      auto s = bounds::SurfaceInvariants::from_pairs(detail::parse_pairs(f[1]));
      auto b = bounds::surface_bound(s);
      bool ok = b.value && *b.value == parse_rational(f[2]) && b.source == f[3];
      if (!ok) bad.push_back(f[0] + ": got " + (b.value ? to_display_string(*b.value) : "none") + " from " + b.source);
    }
    r.pass = rows > 0 && bad.empty();
    r.detail = std::to_string(rows) + " rows, " + std::to_string(bad.size()) + " mismatches";
    if (!bad.empty()) r.detail += " (" + detail::join_strings(bad, "; ") + ")";
  });
}

inline CriterionResult criterion_oracles(const AcceptanceOptions& o) {
  return detail::timed("10", "fast operations against brute force, 500 random sets", [&](CriterionResult& r) {
    std::mt19937_64 rng(o.seed ^ 0x5eedULL);
    std::size_t mid = 0, chain = 0, arr = 0, uni = 0;
    for (int i = 0; i < 500; ++i) {
      std::size_t dim = 1 + static_cast<std::size_t>(i % 4);
      Coord side = 1 + static_cast<Coord>(rng() % 6);
      auto a = detail::random_set(rng, dim, 50, side);
      auto b = detail::random_set(rng, dim, 50, side);
      auto fast = lattice::midpoint_set(a, b).doubled_points;
      auto slow = naive_doubled_midpoints(a, b);
      if (std::vector<Point>(fast.begin(), fast.end()) != std::vector<Point>(slow.begin(), slow.end()) ||
          lattice::midpoint_count(a, b) != slow.size() || lattice::midpoint_count(a, a) != naive_doubled_midpoints(a, a).size())
        ++mid;
      if (lattice::longest_chain(a) != naive_longest_chain(a)) ++chain;
      for (std::size_t axis = 0; axis < dim; ++axis) {
        auto x = lattice::arrangement(a, axis);
        auto y = naive_arrangement(a, axis);
        if (std::vector<Point>(x.begin(), x.end()) != std::vector<Point>(y.begin(), y.end())) {
          ++arr;
          break;
        }
      }
      auto a2 = detail::random_subset(rng, a, 0.7);
      auto a1 = detail::random_subset(rng, a2, 0.5);
      lattice::ConvexTriple t{a1, a2, a, {}};
      if (lattice::union_count(t) != naive_union_count(t)) ++uni;
    }
    r.pass = mid == 0 && chain == 0 && arr == 0 && uni == 0;
    r.detail = "mismatches: midpoints " + std::to_string(mid) + ", chains " + std::to_string(chain) + ", arrangement " +
               std::to_string(arr) + ", union count " + std::to_string(uni);
  });
}

/// Runs every criterion in order, reporting each as it finishes.
inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& o,
                                                   const std::function<void(const CriterionResult&)>& report = {}) {
  std::vector<CriterionResult> out;
  // runtime ceilings per criterion, in seconds
  const std::map<std::string, double> ceiling{{"1", 300}, {"2", 600}, {"5", 600}, {"8", 60}};
  auto add = [&](CriterionResult r) {
    if (auto it = ceiling.find(r.id); it != ceiling.end() && r.seconds >= it->second) {
      r.pass = false;
      r.detail += "; exceeded " + std::to_string(static_cast<int>(it->second)) + "s";
    }
    if (report) report(r);
    out.push_back(std::move(r));
  };
  add(criterion_fermat(o));
  add(criterion_variable_moduli(o));
  add(criterion_cyclic(o));
  add(criterion_family());
  add(criterion_arrangement_suite(o));
  add(lemma_suite("6a", lemma::LemmaId::l25, 3, 1000, 3000, o));
  add(lemma_suite("6b", lemma::LemmaId::l27, 3, 1000, 3000, o));
  add(criterion_large_dim4(o));
  {
    struct Cell { std::size_t dim, want, min; Coord side; };
    for (const Cell& c : {Cell{5, 17, 2700, 5}, Cell{6, 17, 2200, 4}, Cell{7, 16, 1600, 3}}) {
      auto r = lemma_suite("6c+", lemma::LemmaId::l26, c.dim, c.want, 200, o, c.min, 3000, c.side, c.dim);
      r.supplementary = true;
      add(std::move(r));
    }
  }
  add(criterion_thresholds());
  add(criterion_universal_n());
  add(criterion_bound_table(o));
  add(criterion_oracles(o));
  return out;
}

}  // namespace abelaut::testing
