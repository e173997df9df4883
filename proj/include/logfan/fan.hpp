// Decompositions of the halfspace over the slice into rational cones, either
// given by a periodic cell complex with an affine symmetry action or by an
// explicit finite list of cones, with the axiom checks and orbit bookkeeping.
#pragma once

#include "logfan/delaunay.hpp"
#include "logfan/group.hpp"

#include <map>

namespace logfan {

struct ConeDecomposition {
  int rank = 0;  // slice rank; cones live in rank + 1 dimensions
  bool periodic = false;

  // periodic mode: all integer translates of the shapes are cells
  PeriodicCellComplex cells;
  AffineAction action;

  // finite mode: explicit cones, one entry per cone
  std::vector<RationalCone> cones;

  int ambient() const { return rank + 1; }
};

ConeDecomposition decomposition_from_complex(const PeriodicCellComplex& cells,
                                             const AffineAction& action);
ConeDecomposition decomposition_from_cones(int rank, const std::vector<RationalCone>& cones);

// the cone over a placed cell at height one
RationalCone cone_of_cell(const ConeDecomposition& dec, const PlacedCell& c);

struct CheckOptions {
  int coverage_grid = 4;
  long max_orbits = 100000;
};

struct CheckReport {
  bool ok = true;
  std::string failure;              // first violated condition with a witness
  std::vector<std::string> notes;   // conditions only partially checkable
};

// fan axioms: strong convexity, closure under faces, pairwise intersection in
// common faces, presence of the central ray, coverage of the slice (periodic
// mode; in finite mode coverage is noted as not checked)
CheckReport check_decomposition(const ConeDecomposition& dec, const CheckOptions& opt = {});

// every group generator maps cells to cells
CheckReport check_stability(const ConeDecomposition& dec);

// stable under the affine action with finitely many orbits
CheckReport check_admissible(const ConeDecomposition& dec, const CheckOptions& opt = {});

struct CellOrbit {
  PlacedCell rep;                        // anchored at the canonical residue
  long size = 1;                         // orbit size modulo pure translations
  std::vector<AffineElement> stabilizer; // setwise stabilizer of the rep cell
  int dim = 0;                           // cell dimension; its cone has dim+1
};

// orbits of cells under the affine action, graded by dimension; throws
// std::runtime_error when the universe exceeds max_orbits states
std::vector<CellOrbit> orbit_decomposition(const ConeDecomposition& dec, long max_orbits = 100000);

// orbit list plus the lookup from any placed cell to its orbit
struct OrbitIndex {
  std::vector<CellOrbit> orbits;
  std::map<std::pair<int, IVec>, int> lookup;  // (shape, canonical residue)
  std::vector<IVec> tbasis;                    // translation lattice basis

  int orbit_of(const PlacedCell& c) const;
};
OrbitIndex orbit_index(const ConeDecomposition& dec, long max_orbits = 100000);

// placed top cells having the given wall in their face list
std::vector<PlacedCell> cofaces(const ConeDecomposition& dec, const PlacedCell& wall);

}  // namespace logfan
