// Finite matrix groups acting on a lattice, and the affine actions on the
// slice that combine lattice translations with such a group.
#pragma once

#include "logfan/matrix.hpp"

#include <optional>
#include <string>

namespace logfan {

struct GroupAction {
  int rank = 0;  // rank of the lattice acted on
  struct Generator {
    std::string name;
    IntMat mat;
  };
  std::vector<Generator> generators;
  std::optional<long> declared_order;
  Int residue_char = 0;
};

// All elements generated by the given matrices, identity first, then breadth
// first in discovery order. Throws if the closure exceeds max_elements or a
// generator is not unimodular; verifies declared_order when present.
std::vector<IntMat> group_closure(const GroupAction& g, size_t max_elements = 100000);

// An element of Y x| Gamma: translate by the lattice vector attached to y
// after applying the group element. gamma indexes a closure list.
struct AffineElement {
  IVec y;
  int gamma = 0;
};

struct AffineAction {
  int slice_rank = 0;
  // column j = slice translation attached to the j-th Y generator
  IntMat translation;
  // closure of the group acting on the slice (contragredient side), [0] = identity
  std::vector<IntMat> gamma_slice;

  int translation_rank() const { return translation.cols(); }

  // pt -> gamma * pt + translation * y
  QVec apply_slice(const AffineElement& e, const QVec& pt) const;
  IVec apply_slice(const AffineElement& e, const IVec& pt) const;

  // block matrix acting on N = slice + height: (xi, h) -> (gamma xi + h T y, h)
  IntMat n_matrix(const AffineElement& e) const;
  // contragredient action on M (inverse transpose of n_matrix)
  IntMat m_matrix(const AffineElement& e) const;
};

}  // namespace logfan
