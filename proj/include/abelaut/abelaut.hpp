#pragma once

#include "core/error.hpp"
#include "core/rational.hpp"
#include "core/report.hpp"
#include "core/seeds.hpp"

#include "lattice/hull.hpp"
#include "lattice/integer_linalg.hpp"
#include "lattice/operations.hpp"
#include "lattice/packing.hpp"
#include "lattice/point_set.hpp"
#include "lattice/serialize.hpp"
#include "lattice/triple.hpp"

#include "lemma/generator.hpp"
#include "lemma/suite.hpp"
#include "lemma/verify.hpp"
#include "lemma/witness.hpp"

#include "covers/cover.hpp"
#include "covers/enumerate.hpp"
#include "covers/golden.hpp"
#include "covers/group.hpp"

#include "bounds/margin.hpp"
#include "bounds/surface.hpp"
#include "bounds/threefold.hpp"

namespace abelaut {
inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchema = 1;
}  // namespace abelaut
