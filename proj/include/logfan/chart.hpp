// Presentations of the affine charts attached to cones: one variable per
// monoid generator, the binomial relations among them up to a degree bound,
// and the monomials that the uniformizer factors into.
#pragma once

#include "logfan/monoid.hpp"

#include <string>

namespace logfan {

struct BinomialRelation {
  std::vector<Int> lhs, rhs;  // exponent vectors over the chart variables
  auto operator<=>(const BinomialRelation&) const = default;
};

struct ChartPresentation {
  AffineMonoid monoid;
  std::vector<std::string> variables;             // x0, x1, ... matching monoid.hilbert
  std::vector<BinomialRelation> relations;        // generate all syzygies up to the bound
  std::vector<std::vector<Int>> uniformizer;      // minimal monomials equal to the uniformizer
  int degree_bound = 8;
  bool smooth_cone = false;                       // ambient cone smooth: chart is a polydisk chart
};

// chart of the dual monoid of a cone in N; degree_bound caps the total degree
// searched for relations
ChartPresentation chart_presentation(const RationalCone& sigma_in_n, int degree_bound = 8);

std::string render_monomial(const ChartPresentation& c, const std::vector<Int>& e);
// one line per relation plus the uniformizer equations
std::vector<std::string> render_relations(const ChartPresentation& c,
                                          const std::string& uniformizer_name);

// indices of chart variables that become invertible on the subchart of a face
std::vector<int> inverted_on_face(const ChartPresentation& c, const RationalCone& face);

}  // namespace logfan
