#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "point_set.hpp"

namespace abelaut::lattice {

/// Text form: "dim=<d>" then one point per line, coordinates separated by spaces.
inline void write_text(std::ostream& os, const LatticeSet& s) {
  os << "dim=" << s.dim() << "\n";
  for (const auto& p : s) {
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
    os << "\n";
  }
}

inline std::string to_text(const LatticeSet& s) {
  std::ostringstream os;
  write_text(os, s);
  return os.str();
}

inline LatticeSet read_text(std::istream& is) {
  std::string line;
  require(static_cast<bool>(std::getline(is, line)) && line.rfind("dim=", 0) == 0,
          "point set text must start with 'dim=<d>'");
  std::size_t dim = 0;
  try {
    dim = std::stoul(line.substr(4));
  } catch (const std::exception&) {
    throw PreconditionError("bad dimension line '" + line + "'");
  }
  std::vector<Point> pts;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    Point p;
    Coord c;
    while (ls >> c) p.push_back(c);
    require(ls.eof(), "bad coordinate in line '" + line + "'");
    require(p.size() == dim, "line '" + line + "' does not have " + std::to_string(dim) + " coordinates");
    pts.push_back(std::move(p));
  }
  return LatticeSet(dim, std::move(pts));
}

inline LatticeSet from_text(const std::string& text) {
  std::istringstream is(text);
  return read_text(is);
}

inline nlohmann::json to_json(const LatticeSet& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : s) arr.push_back(p);
  return arr;
}

// An empty array carries no dimension, hence the fallback.
inline LatticeSet from_json(const nlohmann::json& j, std::size_t dim_if_empty = 0) {
  require(j.is_array(), "point set JSON must be an array of arrays");
  std::vector<Point> pts;
  for (const auto& row : j) {
    require(row.is_array(), "point set JSON must be an array of arrays");
    Point p;
    for (const auto& c : row) {
      require(c.is_number_integer(), "coordinates must be integers");
      p.push_back(c.get<Coord>());
    }
    pts.push_back(std::move(p));
  }
  if (pts.empty()) return LatticeSet(dim_if_empty);
  return LatticeSet::of(std::move(pts));
}

}  // namespace abelaut::lattice
