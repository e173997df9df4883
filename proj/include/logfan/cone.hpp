// Rational polyhedral cones with exact V- and H-representations kept in a
// canonical form: primitive extreme rays reduced modulo the lineality lattice
// and sorted, so equal cones compare equal componentwise.
#pragma once

#include "logfan/lattice.hpp"
#include "logfan/snf.hpp"

namespace logfan {

struct DDPair {
  std::vector<IVec> rays;
  std::vector<IVec> lineality;
};

// V-representation of { x : ineqs x >= 0, eqs x = 0 } by the double
// description method. Rays come back primitive, reduced modulo the lineality
// lattice and sorted; lineality is the canonical saturated kernel basis.
DDPair double_description(int dim, const std::vector<IVec>& ineqs, const std::vector<IVec>& eqs);

struct RationalCone {
  int ambient = 0;
  Side side = Side::N;
  std::vector<IVec> rays;       // extreme rays, canonical
  std::vector<IVec> lineality;  // saturated basis of the lineality space
  std::vector<IVec> ineqs;      // facet covectors, canonical
  std::vector<IVec> eqs;        // saturated basis of the span's annihilator

  int dim() const { return ambient - int(eqs.size()); }
  bool pointed() const { return lineality.empty(); }
  bool is_zero() const { return rays.empty() && lineality.empty(); }

  bool contains(const IVec& x) const;
  bool contains(const QVec& x) const;
  bool contains_in_interior(const QVec& x) const;  // relative interior
  bool contains_cone(const RationalCone& c) const;

  // generators as reported: rays plus both signs of the lineality basis
  std::vector<IVec> generator_list() const;

  bool operator==(const RationalCone& o) const {
    return ambient == o.ambient && rays == o.rays && lineality == o.lineality;
  }
  bool operator<(const RationalCone& o) const {
    if (ambient != o.ambient) return ambient < o.ambient;
    if (rays != o.rays) return rays < o.rays;
    return lineality < o.lineality;
  }
};

RationalCone cone_from_generators(int ambient, Side side, std::vector<IVec> gens,
                                  std::vector<IVec> lineality_gens = {});
RationalCone cone_from_inequalities(int ambient, Side side, const std::vector<IVec>& ineqs,
                                    const std::vector<IVec>& eqs = {});

// polar dual { u : <u, x> >= 0 for all x in c }, on the other side
RationalCone dual_cone(const RationalCone& c);

// all faces including {0}-or-minimal face and c itself, sorted by (dim, rays)
std::vector<RationalCone> faces(const RationalCone& c);

// rays plus lineality extend to a basis of the ambient lattice
bool is_smooth_cone(const RationalCone& c);

// canonical representative of x modulo the lattice spanned by basis (saturated)
IVec reduce_mod_lattice(const IVec& x, const std::vector<IVec>& basis);

}  // namespace logfan
