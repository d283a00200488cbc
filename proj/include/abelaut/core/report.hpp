#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace abelaut {

/// One named hypothesis with the value that decided it.
struct Check {
  std::string name;
  bool holds = false;
  std::string measured;
};

/// A conjunction of hypothesis checks. `admissible` is recomputed on every add.
class HypothesisReport {
 public:
  HypothesisReport() = default;
  explicit HypothesisReport(std::string id) : id_(std::move(id)) {}

  const std::string& id() const { return id_; }
  const std::vector<Check>& checks() const { return checks_; }
  bool admissible() const { return admissible_; }

  void add(std::string name, bool holds, std::string measured = {}) {
    admissible_ = admissible_ && holds;
    checks_.push_back({std::move(name), holds, std::move(measured)});
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks_)
      if (c.name == name) return &c;
    return nullptr;
  }

  nlohmann::json to_json() const {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : checks_)
      checks.push_back({{"name", c.name}, {"holds", c.holds}, {"measured", c.measured}});
    return {{"id", id_}, {"admissible", admissible_}, {"checks", std::move(checks)}};
  }

 private:
  std::string id_;
  std::vector<Check> checks_;
  bool admissible_ = true;
};

}  // namespace abelaut
