#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "../core/seeds.hpp"
#include "generator.hpp"
#include "verify.hpp"
#include "witness.hpp"

namespace abelaut::lemma {

struct SuiteOptions {
  LemmaId lemma = LemmaId::l24;
  std::size_t trials = 100;          // attempts
  std::size_t stop_after_admissible = 0;  // 0: run every attempt
  std::size_t dim = 3;
  std::uint64_t seed = 1;
  std::size_t min_size = 0, max_size = 0;  // 0: per-lemma defaults
  lattice::Coord side = 0;                  // large instances only
  bool check_convexity = false;
  std::string witness_dir;  // empty: keep witnesses in memory only
};

struct TrialRecord {
  std::uint64_t seed = 0;
  std::size_t index = 0;
  bool generated = true;
  bool admissible = false;
  std::size_t lhs = 0;
  Rational rhs = 0;
  bool satisfied = true;
  std::string note;
  double millis = 0;

  nlohmann::json to_json(LemmaId id) const {
    nlohmann::json j{{"lemma", to_string(id)}, {"seed", seed}, {"index", index}, {"admissible", admissible}};
    if (!generated) j["note"] = note;
    if (admissible) {
      j["lhs"] = lhs;
      j["rhs"] = to_fraction_string(rhs);
      j["satisfied"] = satisfied;
    }
    return j;
  }
};

struct SuiteResult {
  std::size_t attempts = 0, admissible = 0, violations = 0;
  std::vector<TrialRecord> trials;
  std::vector<std::string> witness_paths;
  std::vector<nlohmann::json> witnesses;
  double seconds = 0;
};

/// Default #a3 range per lemma. 2.6 only binds beyond 1060 points.
inline std::pair<std::size_t, std::size_t> default_sizes(LemmaId id) {
  switch (id) {
    case LemmaId::l24: return {10, 49};
    case LemmaId::l25: return {60, 179};
    case LemmaId::l26: return {1100, 3000};
    case LemmaId::l27: return {60, 179};
  }
  return {10, 49};
}

inline ConvexTriple generate_for(const SuiteOptions& o, std::size_t index, std::uint64_t seed) {
  auto [lo, hi] = default_sizes(o.lemma);
  if (o.min_size) lo = o.min_size;
  if (o.max_size) hi = o.max_size;
  require(lo <= hi, "min size exceeds max size");
  if (o.lemma == LemmaId::l26) {
    LargeOptions l;
    l.dim = o.dim;
    l.min_size = lo;
    l.max_size = hi;
    l.side = o.side;
    l.min_a1_dim = std::min<std::size_t>(4, o.dim);
    return generate_large_triple(l, seed);
  }
  GeneratorOptions g;
  g.dim = o.dim;
  g.size_target = std::max(lo + index % (hi - lo + 1), o.dim + 1);
  if (o.lemma == LemmaId::l25) {
    g.a2_fraction_lo = 0.55;
    g.a2_fraction_hi = 0.95;
    g.min_a1_dim = 3;
  } else if (o.lemma == LemmaId::l27) {
    g.a2_fraction_lo = 0.4;
    g.a2_fraction_hi = 0.95;
    g.min_a1_dim = 2;
  } else {
    g.min_a1_dim = std::min<std::size_t>(3, o.dim);
  }
  return generate_nested_triple(g, seed);
}

/// Runs seeded trials through verify_lemma. Trial i uses trial_seed(seed, i),
/// so any single trial can be replayed alone.
inline SuiteResult run_suite(const SuiteOptions& o) {
  require(o.trials >= 1, "trials must be >= 1");
  require(o.dim >= 2, "dim must be >= 2");
  SuiteResult res;
  auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < o.trials; ++i) {
    if (o.stop_after_admissible && res.admissible >= o.stop_after_admissible) break;
    auto t0 = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.index = i;
    rec.seed = trial_seed(o.seed, i);
    ++res.attempts;
    std::optional<ConvexTriple> t;
    try {
      t = generate_for(o, i, rec.seed);
    } catch (const PreconditionError& e) {
      rec.generated = false;
      rec.note = e.what();
    }
    if (t) {
      VerifyOptions vo;
      vo.check_convexity = o.check_convexity;
      vo.trial_seed = rec.seed;
      auto [report, out] = verify_lemma(o.lemma, *t, vo);
      rec.admissible = report.admissible();
      rec.lhs = out.lhs_count;
      rec.rhs = out.rhs_bound;
      rec.satisfied = out.satisfied;
      if (rec.admissible) {
        ++res.admissible;
        if (!out.satisfied) {
          ++res.violations;
          res.witnesses.push_back(witness_json(o.lemma, *t, report, out));
          if (!o.witness_dir.empty()) res.witness_paths.push_back(write_witness(o.witness_dir, o.lemma, *t, report, out));
        }
      }
    }
    rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    res.trials.push_back(std::move(rec));
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace abelaut::lemma
