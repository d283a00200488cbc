#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "../lattice/serialize.hpp"
#include "verify.hpp"

namespace abelaut::lemma {

/// Everything needed to replay one trial.
inline nlohmann::json witness_json(LemmaId id, const ConvexTriple& t, const HypothesisReport& report,
                                   const VerificationOutcome& out) {
  return {{"lemma", to_string(id)},
          {"trial_seed", out.trial_seed},
          {"dim", t.dim()},
          {"a1", lattice::to_json(t.a1)},
          {"a2", lattice::to_json(t.a2)},
          {"a3", lattice::to_json(t.a3)},
          {"generator", t.witness_regions},
          {"lhs", out.lhs_count},
          {"rhs", to_fraction_string(out.rhs_bound)},
          {"notes", out.notes},
          {"hypotheses", report.to_json()}};
}

inline ConvexTriple triple_from_witness(const nlohmann::json& j) {
  std::size_t d = j.at("dim").get<std::size_t>();
  return {lattice::from_json(j.at("a1"), d), lattice::from_json(j.at("a2"), d), lattice::from_json(j.at("a3"), d),
          j.value("generator", std::string())};
}

/// Writes witness_<lemma>_<seed>.json under dir and returns the path.
inline std::string write_witness(const std::string& dir, LemmaId id, const ConvexTriple& t,
                                 const HypothesisReport& report, const VerificationOutcome& out) {
  std::filesystem::create_directories(dir);
  auto path = std::filesystem::path(dir) / ("witness_" + to_string(id) + "_" + std::to_string(out.trial_seed) + ".json");
  std::ofstream os(path);
  os << witness_json(id, t, report, out).dump(1) << "\n";
  if (!os) throw std::runtime_error("cannot write witness " + path.string());
  return path.string();
}

}  // namespace abelaut::lemma
