#include "logfan/report.hpp"

#include "json.hpp"

#include <iomanip>
#include <sstream>

namespace logfan {

using ordered_json = nlohmann::ordered_json;

std::string tool_version() { return "0.1.0"; }

std::string input_hash(const std::string& bytes) {
  unsigned long long h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

namespace {

std::vector<std::vector<std::string>> matrix_strings(const IntMat& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    out[i].reserve(m.cols());
    for (int j = 0; j < m.cols(); ++j) out[i].push_back(to_string(m.at(i, j)));
  }
  return out;
}

std::vector<std::string> vector_strings(const std::vector<Int>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const Int& a : v) out.push_back(to_string(a));
  return out;
}

const char* verdict_name(KatoVerdict v) {
  switch (v) {
    case KatoVerdict::log_smooth: return "log_smooth";
    case KatoVerdict::fails_injectivity: return "fails_injectivity";
    default: return "fails_torsion_free";
  }
}

}  // namespace

RenderedDerived render_derived(const DerivedData& der, bool periodic) {
  RenderedDerived out;
  out.rank = der.s.rows();
  out.periodic = periodic;
  out.residue_char = to_string(der.residue_char);
  out.s = matrix_strings(der.s);
  out.q_matrix = matrix_strings(der.form.a);
  out.q_den = to_string(der.form.den);
  out.group_order = long(der.closure.size());
  out.doubled_shifts = vector_strings(der.doubled_shifts);
  return out;
}

std::vector<RenderedOrbit> render_orbits(const std::vector<CellOrbit>& orbits) {
  std::vector<RenderedOrbit> out;
  out.reserve(orbits.size());
  for (size_t i = 0; i < orbits.size(); ++i) {
    RenderedOrbit r;
    r.index = int(i);
    r.dim = orbits[i].dim;
    r.shape = orbits[i].rep.shape;
    r.anchor = vector_strings(orbits[i].rep.anchor);
    r.size = orbits[i].size;
    r.stabilizer_order = long(orbits[i].stabilizer.size());
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RenderedChart> render_charts(const std::vector<ShapeChart>& charts,
                                         const std::string& uniformizer) {
  std::vector<RenderedChart> out;
  out.reserve(charts.size());
  for (const auto& sc : charts) {
    RenderedChart r;
    r.shape = sc.shape;
    r.smooth_cone = sc.chart.smooth_cone;
    r.variables = sc.chart.variables;
    r.relations = render_relations(sc.chart, uniformizer);
    r.verdict = verdict_name(sc.kato.verdict);
    r.injective = sc.kato.injective;
    r.cokernel_free_rank = sc.kato.cokernel.free_rank;
    r.cokernel_torsion = vector_strings(sc.kato.cokernel.torsion);
    r.general_mode = sc.kato.general_mode;
    out.push_back(std::move(r));
  }
  return out;
}

RenderedDual render_dual(const DualComplexSummary& d) {
  RenderedDual out;
  out.cells_by_dim = d.cells_by_dim;
  out.euler = d.euler;
  out.cycle_length = d.cycle_length;
  for (const auto& v : d.vertices) out.vertices.push_back({v.orbit, v.stab_order, v.shape});
  for (const auto& e : d.edges) out.edges.push_back({e.orbit, e.from, e.to, e.stab_order});
  return out;
}

RenderedTameness render_tameness(const TamenessReport& t) {
  RenderedTameness out;
  out.residue_char = to_string(t.residue_char);
  out.stabilizer_orders = t.stabilizer_orders;
  out.wild_orbits = t.wild_orbits;
  out.nontrivial_action_orbits = t.nontrivial_action_orbits;
  out.wild = t.wild();
  out.very_tame = t.very_tame();
  return out;
}

const std::vector<std::string>& stage_names() {
  static const std::vector<std::string> names = {
      "config", "validation", "decomposition", "admissibility", "polarization", "smoothness"};
  return names;
}

namespace {

// everything before failed_at passed, everything after is skipped; an
// unrecognized failed_at (internal errors) marks all stages skipped
std::vector<RenderedStage> stage_list(const std::string& failed_at) {
  const auto& names = stage_names();
  size_t cut = names.size();
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == failed_at) cut = i;
  std::vector<RenderedStage> out;
  if (cut == names.size() && !failed_at.empty()) {
    for (const auto& n : names) out.push_back({n, "skipped"});
    return out;
  }
  for (size_t i = 0; i < names.size(); ++i) {
    std::string status = failed_at.empty() ? "passed"
                         : i < cut         ? "passed"
                         : i == cut        ? "failed"
                                           : "skipped";
    out.push_back({names[i], status});
  }
  return out;
}

}  // namespace

RenderedReport render_report(const ModelReport& rep, const Provenance& prov,
                             const std::string& uniformizer) {
  RenderedReport out;
  out.tool = "logfan " + tool_version();
  out.provenance = prov;
  out.overall = rep.verified ? "verified" : "failed";
  out.failed_at = rep.failed_at;
  out.failure = rep.failure;
  out.stages = stage_list(rep.failed_at);
  out.derived = render_derived(rep.derived, rep.dec.periodic);
  if (rep.pol) out.k = to_string(rep.pol->k);
  out.orbits = render_orbits(rep.orbits);
  out.charts = render_charts(rep.charts, uniformizer);
  if (rep.dual) out.dual = render_dual(*rep.dual);
  if (rep.tameness) out.tameness = render_tameness(*rep.tameness);
  out.notes = rep.notes;
  return out;
}

RenderedReport render_failure(const std::string& failed_at, const std::string& message,
                              const Provenance& prov) {
  RenderedReport out;
  out.tool = "logfan " + tool_version();
  out.provenance = prov;
  out.overall = "failed";
  out.failed_at = failed_at;
  out.failure = message;
  out.stages = stage_list(failed_at);
  return out;
}

int exit_code(const RenderedReport& rep) {
  if (rep.overall == "verified") return 0;
  const std::string& f = rep.failed_at;
  if (f == "config" || f == "validation") return 2;
  if (f == "decomposition") return 3;
  if (f == "admissibility") return 4;
  if (f == "polarization") return 5;
  if (f == "smoothness") return 6;
  return 7;
}

namespace {

ordered_json legend_json() {
  ordered_json legend;
  legend["values"] =
      "integer and rational values are decimal strings to keep arbitrary precision exact";
  legend["overall"] =
      "covers exactly the stages this run executed; stages not run are marked skipped";
  legend["wild_orbits"] =
      "orbit stabilizer order divisible by the residue characteristic; an advisory "
      "warning for the quotient step, never a failure";
  legend["very_tame"] =
      "no stabilizer moves its chart monoid modulo units; when false the listed orbits "
      "need a finer equivariant subdivision before quotients behave";
  legend["exit_codes"] =
      "0 verified, 2 config or validation, 3 decomposition, 4 admissibility, "
      "5 polarization, 6 smoothness, 7 internal";
  return legend;
}

}  // namespace

std::string emit_json(const RenderedReport& rep) {
  ordered_json j;
  j["schema_version"] = rep.schema_version;
  j["tool"] = rep.tool;
  ordered_json prov;
  prov["input_hash"] = rep.provenance.input_hash;
  if (rep.provenance.seed) prov["seed"] = *rep.provenance.seed;
  j["provenance"] = prov;
  j["overall"] = rep.overall;
  if (!rep.failed_at.empty()) {
    j["failed_at"] = rep.failed_at;
    j["failure"] = rep.failure;
  }
  ordered_json stages = ordered_json::array();
  for (const auto& s : rep.stages) stages.push_back({{"name", s.name}, {"status", s.status}});
  j["stages"] = stages;
  if (rep.derived) {
    ordered_json d;
    d["rank"] = rep.derived->rank;
    d["periodic"] = rep.derived->periodic;
    d["residue_char"] = rep.derived->residue_char;
    d["s"] = rep.derived->s;
    d["q"] = {{"matrix", rep.derived->q_matrix}, {"den", rep.derived->q_den}};
    d["group_order"] = rep.derived->group_order;
    d["doubled_shifts"] = rep.derived->doubled_shifts;
    j["derived"] = d;
  }
  if (rep.k) j["polarization"] = {{"k", *rep.k}};
  if (!rep.orbits.empty()) {
    ordered_json arr = ordered_json::array();
    for (const auto& o : rep.orbits)
      arr.push_back({{"index", o.index},
                     {"dim", o.dim},
                     {"shape", o.shape},
                     {"anchor", o.anchor},
                     {"size", o.size},
                     {"stabilizer_order", o.stabilizer_order}});
    j["orbits"] = arr;
  }
  if (!rep.charts.empty()) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : rep.charts) {
      ordered_json kato;
      kato["verdict"] = c.verdict;
      kato["injective"] = c.injective;
      kato["cokernel_free_rank"] = c.cokernel_free_rank;
      kato["cokernel_torsion"] = c.cokernel_torsion;
      kato["general_mode"] = c.general_mode;
      arr.push_back({{"shape", c.shape},
                     {"smooth_cone", c.smooth_cone},
                     {"variables", c.variables},
                     {"relations", c.relations},
                     {"kato", kato}});
    }
    j["charts"] = arr;
  }
  if (rep.dual) {
    ordered_json d;
    d["cells_by_dim"] = rep.dual->cells_by_dim;
    d["euler"] = rep.dual->euler;
    if (rep.dual->cycle_length) d["cycle_length"] = *rep.dual->cycle_length;
    ordered_json verts = ordered_json::array();
    for (const auto& v : rep.dual->vertices)
      verts.push_back({{"orbit", v.orbit}, {"stab_order", v.stab_order}, {"shape", v.shape}});
    d["vertices"] = verts;
    ordered_json edges = ordered_json::array();
    for (const auto& e : rep.dual->edges)
      edges.push_back(
          {{"orbit", e.orbit}, {"from", e.from}, {"to", e.to}, {"stab_order", e.stab_order}});
    d["edges"] = edges;
    j["dual_complex"] = d;
  }
  if (rep.tameness) {
    ordered_json t;
    t["residue_char"] = rep.tameness->residue_char;
    t["stabilizer_orders"] = rep.tameness->stabilizer_orders;
    t["wild_orbits"] = rep.tameness->wild_orbits;
    t["nontrivial_action_orbits"] = rep.tameness->nontrivial_action_orbits;
    t["wild"] = rep.tameness->wild;
    t["very_tame"] = rep.tameness->very_tame;
    j["tameness"] = t;
  }
  j["notes"] = rep.notes;
  j["legend"] = legend_json();
  return j.dump(2) + "\n";
}

namespace {

std::vector<std::string> string_list(const ordered_json& j) {
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(e.get<std::string>());
  return out;
}

std::vector<std::vector<std::string>> string_matrix(const ordered_json& j) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : j) out.push_back(string_list(row));
  return out;
}

}  // namespace

RenderedReport parse_report(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("report is not valid JSON: ") + e.what());
  }
  try {
    RenderedReport rep;
    rep.schema_version = j.at("schema_version").get<int>();
    if (rep.schema_version != 1)
      throw std::runtime_error("unsupported report schema_version " +
                               std::to_string(rep.schema_version));
    rep.tool = j.at("tool").get<std::string>();
    rep.provenance.input_hash = j.at("provenance").at("input_hash").get<std::string>();
    if (j.at("provenance").contains("seed"))
      rep.provenance.seed = j.at("provenance").at("seed").get<unsigned long long>();
    rep.overall = j.at("overall").get<std::string>();
    if (j.contains("failed_at")) {
      rep.failed_at = j.at("failed_at").get<std::string>();
      rep.failure = j.at("failure").get<std::string>();
    }
    for (const auto& s : j.at("stages"))
      rep.stages.push_back({s.at("name").get<std::string>(), s.at("status").get<std::string>()});
    if (j.contains("derived")) {
      const auto& d = j.at("derived");
      RenderedDerived der;
      der.rank = d.at("rank").get<int>();
      der.periodic = d.at("periodic").get<bool>();
      der.residue_char = d.at("residue_char").get<std::string>();
      der.s = string_matrix(d.at("s"));
      der.q_matrix = string_matrix(d.at("q").at("matrix"));
      der.q_den = d.at("q").at("den").get<std::string>();
      der.group_order = d.at("group_order").get<long>();
      der.doubled_shifts = string_list(d.at("doubled_shifts"));
      rep.derived = std::move(der);
    }
    if (j.contains("polarization")) rep.k = j.at("polarization").at("k").get<std::string>();
    if (j.contains("orbits")) {
      for (const auto& o : j.at("orbits")) {
        RenderedOrbit r;
        r.index = o.at("index").get<int>();
        r.dim = o.at("dim").get<int>();
        r.shape = o.at("shape").get<int>();
        r.anchor = string_list(o.at("anchor"));
        r.size = o.at("size").get<long>();
        r.stabilizer_order = o.at("stabilizer_order").get<long>();
        rep.orbits.push_back(std::move(r));
      }
    }
    if (j.contains("charts")) {
      for (const auto& c : j.at("charts")) {
        RenderedChart r;
        r.shape = c.at("shape").get<int>();
        r.smooth_cone = c.at("smooth_cone").get<bool>();
        r.variables = string_list(c.at("variables"));
        r.relations = string_list(c.at("relations"));
        const auto& k = c.at("kato");
        r.verdict = k.at("verdict").get<std::string>();
        r.injective = k.at("injective").get<bool>();
        r.cokernel_free_rank = k.at("cokernel_free_rank").get<int>();
        r.cokernel_torsion = string_list(k.at("cokernel_torsion"));
        r.general_mode = k.at("general_mode").get<bool>();
        rep.charts.push_back(std::move(r));
      }
    }
    if (j.contains("dual_complex")) {
      const auto& d = j.at("dual_complex");
      RenderedDual dual;
      dual.cells_by_dim = d.at("cells_by_dim").get<std::vector<long>>();
      dual.euler = d.at("euler").get<long>();
      if (d.contains("cycle_length")) dual.cycle_length = d.at("cycle_length").get<long>();
      for (const auto& v : d.at("vertices"))
        dual.vertices.push_back({v.at("orbit").get<int>(), v.at("stab_order").get<long>(),
                                 v.at("shape").get<int>()});
      for (const auto& e : d.at("edges"))
        dual.edges.push_back({e.at("orbit").get<int>(), e.at("from").get<int>(),
                              e.at("to").get<int>(), e.at("stab_order").get<long>()});
      rep.dual = std::move(dual);
    }
    if (j.contains("tameness")) {
      const auto& t = j.at("tameness");
      RenderedTameness tame;
      tame.residue_char = t.at("residue_char").get<std::string>();
      tame.stabilizer_orders = t.at("stabilizer_orders").get<std::vector<long>>();
      tame.wild_orbits = t.at("wild_orbits").get<std::vector<int>>();
      tame.nontrivial_action_orbits = t.at("nontrivial_action_orbits").get<std::vector<int>>();
      tame.wild = t.at("wild").get<bool>();
      tame.very_tame = t.at("very_tame").get<bool>();
      rep.tameness = std::move(tame);
    }
    rep.notes = j.at("notes").get<std::vector<std::string>>();
    return rep;
  } catch (const ordered_json::exception& e) {
    throw std::runtime_error(std::string("malformed report: ") + e.what());
  }
}

std::string emit_dot(const RenderedReport& rep) {
  std::ostringstream os;
  os << "graph dual_complex {\n";
  os << "  node [shape=circle];\n";
  if (rep.dual) {
    for (size_t i = 0; i < rep.dual->vertices.size(); ++i)
      os << "  v" << i << " [label=\"v" << i << "\\nstab " << rep.dual->vertices[i].stab_order
         << "\"];\n";
    for (const auto& e : rep.dual->edges) os << "  v" << e.from << " -- v" << e.to << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace logfan
