// Affine monoids sigma^vee cap M, their minimal generators, and the
// criterion check on the monoid map classifying the height of the chart.
#pragma once

#include "logfan/cone.hpp"

#include <optional>

namespace logfan {

// The monoid of lattice points of a rational cone in M. The unit subgroup is
// split off; pointed_gens is the unique minimal generating set of the pointed
// quotient, lifted back. hilbert lists +/- unit basis pairs first, then the
// pointed generators: together they generate the monoid minimally.
struct AffineMonoid {
  RationalCone cone;
  std::vector<IVec> unit_basis;    // canonical basis of the unit lattice
  std::vector<IVec> pointed_gens;  // lifted Hilbert basis of the quotient
  std::vector<IVec> hilbert;       // +u0, -u0, +u1, -u1, ..., then pointed_gens

  IntMat frame;     // unimodular; first unit_rank coords of frame*x span the units
  int unit_rank = 0;
  RationalCone image;              // pointed quotient cone
  std::vector<IVec> pointed_image; // images of pointed_gens, same order

  int ambient() const { return cone.ambient; }
  IVec project(const IVec& x) const;   // quotient coordinates
  IVec lift(const IVec& q) const;      // canonical section of project
  bool contains(const IVec& x) const { return cone.contains(x); }
};

AffineMonoid hilbert_basis(const RationalCone& cone_in_m);

// one expression of target as an N-combination of hilbert, if any
std::optional<std::vector<Int>> decompose(const AffineMonoid& m, const IVec& target);

// all expressions of target with componentwise-minimal exponent vectors
std::vector<std::vector<Int>> minimal_fiber(const AffineMonoid& m, const IVec& target);

// map of monoids along with what it does on group completions; gp_matrix is
// written in gp_basis coordinates of the target (gp_basis = identity when the
// target monoid generates the full ambient lattice)
struct MonoidHom {
  AffineMonoid source;
  AffineMonoid target;
  IntMat gp_matrix;
  IntMat gp_basis;  // columns span the group generated by the target monoid
};

// the monoid map N -> sigma^vee cap M sending 1 to the height covector
// (0,...,0,1); throws HeightError if the covector is not in sigma^vee
MonoidHom f_sigma_dual(const RationalCone& sigma_in_n);

struct HeightError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class KatoVerdict { log_smooth, fails_injectivity, fails_torsion_free };

struct KatoResult {
  KatoVerdict verdict = KatoVerdict::log_smooth;
  bool injective = true;
  CokernelInvariants cokernel;
  bool general_mode = false;

  bool ok() const { return verdict == KatoVerdict::log_smooth; }
};

// smoothness criterion on gp level: injective with torsion-free cokernel.
// general=true relaxes to torsion of order invertible in the residue field.
KatoResult kato_log_smooth_check(const MonoidHom& f, bool general = false,
                                 const Int& residue_char = 0);

}  // namespace logfan
