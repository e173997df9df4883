// The piecewise affine convex function attached to a positive definite form
// on a periodic decomposition: per-cell affine interpolation of the form's
// values, translation by twisted pieces, and the full validity check.
#pragma once

#include "logfan/fan.hpp"

namespace logfan {

struct AffineForm {
  QVec grad;
  Rat c;

  Rat eval(const QVec& x) const {
    Rat v = c;
    for (size_t i = 0; i < grad.size(); ++i) v += grad[i] * x[i];
    return v;
  }
};

struct Polarization {
  QuadraticForm q;
  // one form per top shape, anchored at zero; other indices stay empty
  std::vector<AffineForm> forms;
  Int k = 1;  // minimal multiplier making every piece and twist integral
};

// interpolate the form's values at the vertices of every top cell; throws
// when the decomposition is not periodic or a cell is not inscribed
Polarization polarization_from_form(const QuadraticForm& q, const ConeDecomposition& dec);

// affine piece on the placed cell: the anchored form twisted by the anchor
AffineForm form_on_cell(const Polarization& pol, const ConeDecomposition& dec,
                        const PlacedCell& c);

// exact value at a point; locates a containing top cell first
Rat evaluate(const Polarization& pol, const ConeDecomposition& dec, const QVec& xi);

// the five conditions: continuity across walls, integrality of k times every
// piece, strict convexity across every interior wall, the translation twist
// identity, and invariance under the group part of the action
CheckReport check_polarization(const Polarization& pol, const ConeDecomposition& dec,
                               const CheckOptions& opt = {});

}  // namespace logfan
