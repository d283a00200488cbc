#pragma once

#include <stdexcept>
#include <string>

namespace abelaut {

// A violated precondition on caller-supplied data: wrong dimension, bad
// invariant, out-of-range parameter. The CLI maps these to exit code 65.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace abelaut
