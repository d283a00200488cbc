#pragma once

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "enumerate.hpp"

namespace abelaut::covers {

/// One expected enumeration result, compared on (g, |G|, G, signature).
struct GoldenEntry {
  long long genus = 0;
  int order = 0;
  std::vector<int> invariant_factors;
  std::vector<int> signature;

  friend auto operator<=>(const GoldenEntry&, const GoldenEntry&) = default;

  std::string to_string() const {
    std::string g = invariant_factors.empty() ? "1" : "";
    for (std::size_t i = 0; i < invariant_factors.size(); ++i)
      g += (i ? "xZ/" : "Z/") + std::to_string(invariant_factors[i]);
    return "{" + std::to_string(genus) + ", " + std::to_string(order) + ", " + g + ", (" + detail::join(signature) + ")}";
  }
  static GoldenEntry of(const EnumerationRecord& r) {
    return {r.genus, r.datum.group.order(), r.datum.group.invariant_factors(), r.datum.signature()};
  }
};

struct GoldenRun {
  std::string name;
  LinearBound bound;
  int gmin = 0, gmax = 0;
  EnumerationFilters filters;
  std::vector<GoldenEntry> expected;
  std::vector<SignatureTuple> printed;  // optional published list
};

inline GoldenRun load_golden(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open golden file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError("golden file " + path + ": " + e.what());
  }
  GoldenRun g;
  g.name = j.value("name", path);
  const auto& run = j.at("run");
  g.bound = LinearBound::parse(run.at("bound").get<std::string>());
  g.gmin = run.at("gmin").get<int>();
  g.gmax = run.at("gmax").get<int>();
  if (run.contains("gamma")) g.filters.gamma = run["gamma"].get<int>();
  g.filters.kmin = run.value("kmin", 0);
  g.filters.require_no_hyperelliptic_witness = run.value("no_hyperelliptic", false);
  g.filters.assume_cyclic = run.value("cyclic", false);
  for (const auto& e : j.at("expected"))
    g.expected.push_back({e.at("genus").get<long long>(), e.at("order").get<int>(),
                          e.at("invariant_factors").get<std::vector<int>>(), e.at("signature").get<std::vector<int>>()});
  if (j.contains("printed"))
    for (const auto& e : j["printed"])
      g.printed.push_back({e.at("genus").get<long long>(), e.at("order").get<int>(), e.at("signature").get<std::vector<int>>()});
  return g;
}

struct GoldenComparison {
  std::vector<GoldenEntry> missing, extra;
  std::optional<SignatureComparison> printed;
  bool exact() const { return missing.empty() && extra.empty(); }

  nlohmann::json to_json() const {
    auto list = [](const auto& v) {
      nlohmann::json a = nlohmann::json::array();
      for (const auto& x : v) a.push_back(x.to_string());
      return a;
    };
    nlohmann::json j{{"exact", exact()}, {"missing", list(missing)}, {"extra", list(extra)}};
    if (printed)
      j["printed_list"] = {{"matched", list(printed->matched)},
                           {"missing_from_search", list(printed->missing)},
                           {"not_in_printed_list", list(printed->extra)}};
    return j;
  }
};

inline GoldenComparison compare_golden(const std::vector<EnumerationRecord>& found, const GoldenRun& g) {
  std::set<GoldenEntry> f, e(g.expected.begin(), g.expected.end());
  for (const auto& r : found) f.insert(GoldenEntry::of(r));
  GoldenComparison c;
  for (const auto& x : f)
    if (!e.count(x)) c.extra.push_back(x);
  for (const auto& x : e)
    if (!f.count(x)) c.missing.push_back(x);
  if (!g.printed.empty()) c.printed = compare_signatures(found, g.printed);
  return c;
}

}  // namespace abelaut::covers
