// Delaunay subdivisions of Z^r under a positive definite form: the star of the
// origin (computed exactly through the dual Voronoi cell), translation classes
// of cells, and the face-closed periodic complex they generate.
#pragma once

#include "logfan/cone.hpp"
#include "logfan/quadform.hpp"

namespace logfan {

// translation class of a polytope with vertices in (1/den) Z^r: vertices are
// stored scaled by den, sorted, with the lexicographically smallest vertex
// anchored to the fundamental box [0, den)^r
struct CellShape {
  Int den = 1;
  std::vector<IVec> verts;
  int dim = 0;

  bool operator==(const CellShape&) const = default;
  bool operator<(const CellShape& o) const;
};

// cell = shape translated by an integer anchor
struct PlacedCell {
  int shape = 0;
  IVec anchor;

  bool operator==(const PlacedCell&) const = default;
  bool operator<(const PlacedCell& o) const {
    return std::tie(shape, anchor) < std::tie(o.shape, o.anchor);
  }
};

// canonical (shape, anchor) with verts/den = shape.verts/shape.den + anchor
std::pair<CellShape, IVec> canonical_cell(const Int& den, std::vector<IVec> verts);

// maximal Delaunay cells containing the origin, as sorted integer vertex lists
std::vector<std::vector<IVec>> delaunay_star(const QuadraticForm& q);

// all cells of the periodic complex, one shape per translation class
struct PeriodicCellComplex {
  int rank = 0;
  std::vector<CellShape> shapes;                // sorted by (dim, den, verts)
  std::vector<std::vector<PlacedCell>> faces;   // proper nonempty faces per shape
  std::vector<int> top;                         // shapes given as maximal cells
};

// closes the given maximal cells (scaled vertex lists over a common den each)
// under faces and translation
PeriodicCellComplex build_periodic_complex(
    int rank, const std::vector<std::pair<Int, std::vector<IVec>>>& max_cells);

PeriodicCellComplex delaunay_complex(const QuadraticForm& q);

// cone over shape x {height den} in the (rank+1)-dimensional cocharacter space
RationalCone cone_over_shape(const CellShape& s, Side side = Side::N);

}  // namespace logfan
