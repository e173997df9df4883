// Base vocabulary: lattices, the ground ring data, ambient labels.
#pragma once

#include "logfan/numeric.hpp"

#include <string>

namespace logfan {

struct Lattice {
  int rank = 0;
  std::string name;  // optional display label
};

// Which side of the duality a vector lives on. Cones live in N, monoids in M.
enum class Side { N, M };

inline const char* side_name(Side s) { return s == Side::N ? "N" : "M"; }

struct GroundData {
  Int residue_char = 0;      // 0 or a prime
  Int ramification_index = 1;
  std::string uniformizer = "pi";
};

}  // namespace logfan
