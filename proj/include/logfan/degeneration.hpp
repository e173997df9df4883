// The pipeline from combinatorial degeneration data to a verified model:
// derive the quadratic form and slice action, build the Delaunay-based
// decomposition with its convex piecewise affine function, check every cone's
// chart against the smoothness criterion, and summarize the special fibre.
#pragma once

#include "logfan/chart.hpp"
#include "logfan/polarization.hpp"

#include <optional>

namespace logfan {

// Split normal form: lattices X and Y of the toric rank, Y embedded in X
// with finite index, a map phi: Y -> X, the pairing b(y_i, x_j) as a matrix,
// quadratic shift data stored doubled so it stays integral, a group acting
// on X, and ground data. Omitted phi and y_embedding default to the identity;
// omitted shifts default to the diagonal of b * phi.
struct DegenerationData {
  int rank = 0;
  IntMat pairing;                     // row i = b(y_i, .) in X coordinates
  std::optional<IntMat> phi;          // column j = phi(y_j) in X coordinates
  std::optional<IntMat> y_embedding;  // column j = y_j in X coordinates
  std::vector<Int> doubled_shifts;    // 2 a(y_j)
  GroupAction group;                  // on X
  GroundData ground;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// everything derived from valid data that later stages consume
struct DerivedData {
  IntMat s;                     // b(y_i, phi(y_j)), symmetric positive definite
  QuadraticForm form;           // s transported to the slice X^vee_R
  std::vector<IntMat> closure;  // group closure on X, identity first
  AffineAction action;          // translations b(y_j, .) and contragredient group
  std::vector<Int> doubled_shifts;
  Int residue_char = 0;
};

// checks the data invariants and derives the slice structures; throws
// ValidationError with a witness otherwise
DerivedData validate(const DegenerationData& d);

struct ModelOptions {
  int degree_bound = 8;
  int coverage_grid = 4;
  long max_orbits = 100000;
  bool general_criterion = false;  // allow torsion invertible in the residue field
  int jobs = 1;
};

// chart of one cell shape (periodic) or one cone (finite) with its verdict
struct ShapeChart {
  int shape = -1;
  ChartPresentation chart;
  KatoResult kato;
};

// charts and criterion verdicts for every shape of the decomposition
std::vector<ShapeChart> chart_survey(const ConeDecomposition& dec, const ModelOptions& opt,
                                     const Int& residue_char);

// orbits of slice cells graded by dimension; a d-cell records a stratum of
// codimension d in the special fibre, so dimension-0 orbits are components
struct DualComplexSummary {
  std::vector<long> cells_by_dim;
  long euler = 0;

  struct Vertex {
    int orbit = 0;        // index into the orbit list
    long stab_order = 1;
    int shape = 0;        // chart reference
  };
  std::vector<Vertex> vertices;

  struct Edge {
    int orbit = 0;
    int from = 0;  // positions in vertices
    int to = 0;
    long stab_order = 1;
  };
  std::vector<Edge> edges;

  // set when the 1-skeleton is a single cycle (rank-1 models)
  std::optional<long> cycle_length;
};

DualComplexSummary dual_complex_summary(const ConeDecomposition& dec, const OrbitIndex& idx);

// stabilizer diagnostics: wild orbits have order divisible by the residue
// characteristic; nontrivial-action orbits have a stabilizer element moving
// the chart monoid modulo its units
struct TamenessReport {
  Int residue_char = 0;
  std::vector<long> stabilizer_orders;        // one per orbit
  std::vector<int> wild_orbits;               // indices into the orbit list
  std::vector<int> nontrivial_action_orbits;  // indices into the orbit list

  bool wild() const { return !wild_orbits.empty(); }
  bool very_tame() const { return nontrivial_action_orbits.empty(); }
};

TamenessReport tameness_diagnostics(const ConeDecomposition& dec, const OrbitIndex& idx,
                                    const Int& residue_char);

// the full pipeline; stages halt at the first failure and keep the artifacts
// produced so far
struct ModelReport {
  bool verified = false;
  std::string failed_at;  // decomposition | admissibility | polarization | smoothness
  std::string failure;    // witness for the failed stage

  DerivedData derived;
  ConeDecomposition dec;
  std::vector<CellOrbit> orbits;
  std::optional<Polarization> pol;
  std::vector<ShapeChart> charts;
  std::optional<DualComplexSummary> dual;
  std::optional<TamenessReport> tameness;
  std::vector<std::string> notes;
};

ModelReport build_model(const DegenerationData& d, const ModelOptions& opt = {});

}  // namespace logfan
