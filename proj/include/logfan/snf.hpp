// Smith normal form and the lattice computations built on it: ranks, kernels,
// cokernel invariants, integral solving, saturation.
#pragma once

#include "logfan/matrix.hpp"

namespace logfan {

// u * a * v = d with u, v unimodular and d diagonal, d_i >= 0, d_i | d_{i+1}
struct SmithForm {
  IntMat u, d, v;
  std::vector<Int> diagonal() const;
  int rank() const;
};

SmithForm smith_normal_form(const IntMat& a);

struct CokernelInvariants {
  int free_rank = 0;
  std::vector<Int> torsion;  // elementary divisors > 1, ascending
  bool operator==(const CokernelInvariants&) const = default;
};

// invariants of Z^m / (column span of f), f an m x n matrix
CokernelInvariants cokernel_invariants(const IntMat& f);

// f injective as a map Z^n -> Z^m
bool is_injective(const IntMat& f);

int integer_rank(const IntMat& a);

// basis of { x in Z^n : a x = 0 }; spans a saturated sublattice
std::vector<IVec> integer_kernel_basis(const IntMat& a);

// basis of the lattice generated by the columns of a
std::vector<IVec> column_lattice_basis(const IntMat& a);

// integral solution of a x = b, free coordinates pinned to 0
std::optional<IVec> solve_integer(const IntMat& a, const IVec& b);

// basis of the saturation (span_Q of the given vectors) intersected with Z^d
std::vector<IVec> saturate_lattice(const std::vector<IVec>& gens, int dim);

// row-style Hermite normal form of the lattice generated by the given
// vectors: the unique canonical basis, independent of the generating set
std::vector<IVec> hnf_basis(const std::vector<IVec>& gens, int dim);

}  // namespace logfan
