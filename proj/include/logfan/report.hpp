// The serialized report: a flat document with stage verdicts, rendered chart
// presentations, the dual complex, and tameness diagnostics. Emission is
// byte-stable so identical runs produce identical files, and parsing is the
// exact inverse of emission. Arbitrary-precision values travel as decimal
// strings.
#pragma once

#include "logfan/degeneration.hpp"

#include <optional>
#include <string>
#include <vector>

namespace logfan {

std::string tool_version();

// 64-bit FNV-1a of the raw input bytes, rendered "fnv1a64:<16 hex digits>"
std::string input_hash(const std::string& bytes);

struct Provenance {
  std::string input_hash;
  std::optional<unsigned long long> seed;  // recorded only; no stage consumes it

  bool operator==(const Provenance&) const = default;
};

struct RenderedStage {
  std::string name;
  std::string status;  // passed | failed | skipped

  bool operator==(const RenderedStage&) const = default;
};

struct RenderedDerived {
  int rank = 0;
  bool periodic = true;
  std::string residue_char;
  std::vector<std::vector<std::string>> s;
  std::vector<std::vector<std::string>> q_matrix;  // form = x^T q_matrix x / q_den
  std::string q_den;
  long group_order = 1;
  std::vector<std::string> doubled_shifts;

  bool operator==(const RenderedDerived&) const = default;
};

struct RenderedOrbit {
  int index = 0;
  int dim = 0;
  int shape = 0;
  std::vector<std::string> anchor;
  long size = 1;
  long stabilizer_order = 1;

  bool operator==(const RenderedOrbit&) const = default;
};

struct RenderedChart {
  int shape = 0;
  bool smooth_cone = false;
  std::vector<std::string> variables;
  std::vector<std::string> relations;  // binomials plus uniformizer equations
  std::string verdict;                 // log_smooth | fails_injectivity | fails_torsion_free
  bool injective = true;
  int cokernel_free_rank = 0;
  std::vector<std::string> cokernel_torsion;
  bool general_mode = false;

  bool operator==(const RenderedChart&) const = default;
};

struct RenderedDual {
  std::vector<long> cells_by_dim;
  long euler = 0;
  std::optional<long> cycle_length;

  struct Vertex {
    int orbit = 0;
    long stab_order = 1;
    int shape = 0;

    bool operator==(const Vertex&) const = default;
  };
  std::vector<Vertex> vertices;

  struct Edge {
    int orbit = 0;
    int from = 0;
    int to = 0;
    long stab_order = 1;

    bool operator==(const Edge&) const = default;
  };
  std::vector<Edge> edges;

  bool operator==(const RenderedDual&) const = default;
};

struct RenderedTameness {
  std::string residue_char;
  std::vector<long> stabilizer_orders;
  std::vector<int> wild_orbits;
  std::vector<int> nontrivial_action_orbits;
  bool wild = false;
  bool very_tame = true;

  bool operator==(const RenderedTameness&) const = default;
};

struct RenderedReport {
  int schema_version = 1;
  std::string tool;
  Provenance provenance;
  std::string overall;    // verified | failed
  std::string failed_at;  // empty when verified
  std::string failure;
  std::vector<RenderedStage> stages;
  std::optional<RenderedDerived> derived;
  std::optional<std::string> k;  // polarization multiplier
  std::vector<RenderedOrbit> orbits;
  std::vector<RenderedChart> charts;
  std::optional<RenderedDual> dual;
  std::optional<RenderedTameness> tameness;
  std::vector<std::string> notes;

  bool operator==(const RenderedReport&) const = default;
};

// piecewise renderers, shared by the subcommands that run partial pipelines
RenderedDerived render_derived(const DerivedData& der, bool periodic);
std::vector<RenderedOrbit> render_orbits(const std::vector<CellOrbit>& orbits);
std::vector<RenderedChart> render_charts(const std::vector<ShapeChart>& charts,
                                         const std::string& uniformizer);
RenderedDual render_dual(const DualComplexSummary& d);
RenderedTameness render_tameness(const TamenessReport& t);

// the full pipeline report; earlier stages pass, later ones are skipped
RenderedReport render_report(const ModelReport& rep, const Provenance& prov,
                             const std::string& uniformizer = "pi");

// a run that died before producing model artifacts (bad config, validation)
RenderedReport render_failure(const std::string& failed_at, const std::string& message,
                              const Provenance& prov);

// stage names in pipeline order
const std::vector<std::string>& stage_names();

// maps the report to the process exit status: 0 verified, 2 config or
// validation, 3 decomposition, 4 admissibility, 5 polarization,
// 6 smoothness, 7 anything unrecognized
int exit_code(const RenderedReport& rep);

std::string emit_json(const RenderedReport& rep);
// inverse of emit_json; throws std::runtime_error on malformed input
RenderedReport parse_report(const std::string& text);

// dual complex 1-skeleton; vertices are labeled with stabilizer orders
std::string emit_dot(const RenderedReport& rep);

}  // namespace logfan
