// Positive definite rational quadratic forms with exact evaluation and exact
// branch-and-bound enumeration of lattice points in ellipsoids.
#pragma once

#include "logfan/matrix.hpp"

namespace logfan {

struct QuadraticForm {
  int n = 0;
  IntMat a;     // integer symmetric matrix
  Int den = 1;  // value(x) = x^T a x / den

  // diagonalization value(x) = sum_i diag[i] (x_i + sum_{j>i} upper[i][j] x_j)^2
  std::vector<QVec> upper;
  QVec diag;

  Rat eval(const QVec& x) const;
  Rat eval(const IVec& x) const;
  Rat inner(const QVec& x, const QVec& y) const;  // the polarizing bilinear form
};

// validates symmetry and positive definiteness (throws std::invalid_argument)
QuadraticForm make_form(const IntMat& a, const Int& den = 1);

// all x in Z^n with value(x - center) <= bound and x congruent to residue mod
// step (step 1: every lattice point). Sorted.
std::vector<IVec> points_in_ellipsoid(const QuadraticForm& q, const QVec& center,
                                      const Rat& bound, int step = 1,
                                      const IVec* residue = nullptr);

// minimum of the form over the residue class (mod 2) and all attaining vectors
struct CosetMinimum {
  Rat value;
  std::vector<IVec> vectors;
};
CosetMinimum coset_minimum(const QuadraticForm& q, const IVec& residue_mod_2);

}  // namespace logfan
