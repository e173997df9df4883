// Command line front end: parse a job description, run the requested stages,
// and write the report artifacts. Exit status mirrors the report verdict.
#include "logfan/config.hpp"
#include "logfan/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

namespace {

using namespace logfan;

struct RunArgs {
  std::string config_path;
  std::string out_dir;
  bool dot = false;
  int jobs = 0;  // 0 = take the config's value
  std::optional<unsigned long long> seed;
};

long env_max_orbits() {
  const char* v = std::getenv("LOGFAN_MAX_ORBITS");
  if (!v || !*v) return 100000;
  char* end = nullptr;
  long n = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || n <= 0) {
    std::cerr << "LOGFAN_MAX_ORBITS must be a positive integer, ignoring \"" << v << "\"\n";
    return 100000;
  }
  return n;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// writes report.json (and report.dot on request) under out, or prints the
// JSON to stdout when no output directory was given
int deliver(const RenderedReport& rep, const RunArgs& args) {
  std::string json = emit_json(rep);
  if (args.out_dir.empty()) {
    std::cout << json;
  } else {
    std::filesystem::create_directories(args.out_dir);
    std::filesystem::path dir(args.out_dir);
    {
      std::ofstream out(dir / "report.json", std::ios::binary);
      if (!out) {
        std::cerr << "cannot write " << (dir / "report.json").string() << "\n";
        return 7;
      }
      out << json;
    }
    if (args.dot) {
      std::ofstream out(dir / "report.dot", std::ios::binary);
      if (!out) {
        std::cerr << "cannot write " << (dir / "report.dot").string() << "\n";
        return 7;
      }
      out << emit_dot(rep);
    }
  }
  if (rep.overall != "verified")
    std::cerr << "failed at " << rep.failed_at << ": " << rep.failure << "\n";
  return exit_code(rep);
}

struct LoadedJob {
  JobConfig cfg;
  Provenance prov;
};

// reads and validates the config; on failure delivers a config-failure report
// and returns its exit status in `code`
std::optional<LoadedJob> load_job(const RunArgs& args, int& code) {
  LoadedJob job;
  std::string text;
  try {
    text = read_file(args.config_path);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    code = 2;
    return std::nullopt;
  }
  job.prov.input_hash = input_hash(text);
  job.prov.seed = args.seed;
  try {
    job.cfg = parse_config_text(text, env_max_orbits());
  } catch (const ConfigError& e) {
    code = deliver(render_failure("config", e.what(), job.prov), args);
    return std::nullopt;
  }
  if (args.jobs > 0) job.cfg.options.jobs = args.jobs;
  return job;
}

int run_build_model(const RunArgs& args) {
  int code = 0;
  auto job = load_job(args, code);
  if (!job) return code;
  if (job->cfg.has_cones)
    return deliver(
        render_failure("config", "build-model needs pairing data, not an explicit cone list",
                       job->prov),
        args);
  try {
    ModelReport rep = build_model(job->cfg.data, job->cfg.options);
    return deliver(render_report(rep, job->prov, job->cfg.data.ground.uniformizer), args);
  } catch (const ValidationError& e) {
    return deliver(render_failure("validation", e.what(), job->prov), args);
  } catch (const std::exception& e) {
    return deliver(render_failure("internal", e.what(), job->prov), args);
  }
}

// marks the named stages passed, everything else skipped
std::vector<RenderedStage> stages_passed(const std::set<std::string>& ran) {
  std::vector<RenderedStage> out;
  for (const auto& name : stage_names())
    out.push_back({name, ran.count(name) ? std::string("passed") : std::string("skipped")});
  return out;
}

// replaces the status of one stage in a passed/skipped list
void mark_failed(std::vector<RenderedStage>& stages, const std::string& name) {
  for (auto& s : stages)
    if (s.name == name) s.status = "failed";
}

int run_check_kato(const RunArgs& args) {
  int code = 0;
  auto job = load_job(args, code);
  if (!job) return code;

  RenderedReport rep;
  rep.tool = "logfan " + tool_version();
  rep.provenance = job->prov;
  // validation only runs when pairing data has to be derived
  std::set<std::string> ran = {"config"};
  try {
    ConeDecomposition dec;
    Int residue_char = 0;
    if (job->cfg.has_cones) {
      dec = decomposition_from_cones(job->cfg.data.rank, job->cfg.cones);
      residue_char = job->cfg.data.group.residue_char != 0 ? job->cfg.data.group.residue_char
                                                           : job->cfg.data.ground.residue_char;
    } else {
      DerivedData der = validate(job->cfg.data);
      ran.insert("validation");
      residue_char = der.residue_char;
      rep.derived = render_derived(der, job->cfg.data.rank > 0);
      if (job->cfg.data.rank == 0)
        dec = decomposition_from_cones(0, {cone_from_generators(1, Side::N, {{Int(1)}})});
      else
        dec = decomposition_from_complex(delaunay_complex(der.form), der.action);
    }

    CheckOptions copt;
    copt.coverage_grid = job->cfg.options.coverage_grid;
    copt.max_orbits = job->cfg.options.max_orbits;
    auto fan_rep = check_decomposition(dec, copt);
    rep.notes = fan_rep.notes;
    if (!fan_rep.ok) {
      rep.overall = "failed";
      rep.failed_at = "decomposition";
      rep.failure = fan_rep.failure;
      rep.stages = stages_passed(ran);
      mark_failed(rep.stages, "decomposition");
      return deliver(rep, args);
    }
    ran.insert("decomposition");

    rep.charts = render_charts(chart_survey(dec, job->cfg.options, residue_char),
                               job->cfg.data.ground.uniformizer);
    ran.insert("smoothness");
    rep.stages = stages_passed(ran);
    for (const auto& c : rep.charts) {
      if (c.verdict == "log_smooth") continue;
      rep.overall = "failed";
      rep.failed_at = "smoothness";
      rep.failure = "chart of cell shape " + std::to_string(c.shape) + " is not log smooth (" +
                    c.verdict + ")";
      mark_failed(rep.stages, "smoothness");
      return deliver(rep, args);
    }
    rep.overall = "verified";
    return deliver(rep, args);
  } catch (const ValidationError& e) {
    return deliver(render_failure("validation", e.what(), job->prov), args);
  } catch (const std::exception& e) {
    return deliver(render_failure("internal", e.what(), job->prov), args);
  }
}

int run_delaunay(const RunArgs& args) {
  int code = 0;
  auto job = load_job(args, code);
  if (!job) return code;
  if (job->cfg.has_cones)
    return deliver(render_failure(
                       "config", "delaunay needs pairing data, not an explicit cone list",
                       job->prov),
                   args);

  RenderedReport rep;
  rep.tool = "logfan " + tool_version();
  rep.provenance = job->prov;
  try {
    DerivedData der = validate(job->cfg.data);
    rep.derived = render_derived(der, job->cfg.data.rank > 0);
    ConeDecomposition dec;
    if (job->cfg.data.rank == 0)
      dec = decomposition_from_cones(0, {cone_from_generators(1, Side::N, {{Int(1)}})});
    else
      dec = decomposition_from_complex(delaunay_complex(der.form), der.action);

    CheckOptions copt;
    copt.coverage_grid = job->cfg.options.coverage_grid;
    copt.max_orbits = job->cfg.options.max_orbits;
    auto fan_rep = check_decomposition(dec, copt);
    rep.notes = fan_rep.notes;
    if (!fan_rep.ok) {
      rep.overall = "failed";
      rep.failed_at = "decomposition";
      rep.failure = fan_rep.failure;
      rep.stages = stages_passed({"config", "validation"});
      mark_failed(rep.stages, "decomposition");
      return deliver(rep, args);
    }
    rep.stages = stages_passed({"config", "validation", "decomposition", "admissibility"});
    auto adm = check_admissible(dec, copt);
    rep.notes.insert(rep.notes.end(), adm.notes.begin(), adm.notes.end());
    if (!adm.ok) {
      rep.overall = "failed";
      rep.failed_at = "admissibility";
      rep.failure = adm.failure;
      mark_failed(rep.stages, "admissibility");
      return deliver(rep, args);
    }
    rep.orbits = render_orbits(orbit_index(dec, job->cfg.options.max_orbits).orbits);
    rep.overall = "verified";
    return deliver(rep, args);
  } catch (const ValidationError& e) {
    return deliver(render_failure("validation", e.what(), job->prov), args);
  } catch (const std::exception& e) {
    return deliver(render_failure("internal", e.what(), job->prov), args);
  }
}

int run_report(const RunArgs& args) {
  std::string text;
  try {
    text = read_file(args.config_path);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  try {
    RenderedReport rep = parse_report(text);
    return deliver(rep, args);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

void add_common(CLI::App* cmd, RunArgs& args) {
  cmd->add_option("--config", args.config_path, "job description (JSON)")->required();
  cmd->add_option("--out", args.out_dir, "directory for report artifacts");
  cmd->add_flag("--dot", args.dot, "also write the dual complex as report.dot");
  cmd->add_option("--jobs", args.jobs, "parallel chart workers")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", args.seed, "recorded in the provenance block");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verified combinatorial models of toric degenerations"};
  app.set_version_flag("--version", "logfan " + tool_version());
  app.require_subcommand(1);

  RunArgs args;
  auto* check_kato = app.add_subcommand(
      "check-kato", "survey the charts of a decomposition and test log smoothness");
  auto* delaunay = app.add_subcommand(
      "delaunay", "build the Delaunay decomposition and its cell orbits");
  auto* build = app.add_subcommand(
      "build-model", "run the full pipeline from degeneration data to a verified model");
  auto* report = app.add_subcommand("report", "re-render a stored report");
  for (auto* cmd : {check_kato, delaunay, build, report}) add_common(cmd, args);

  CLI11_PARSE(app, argc, argv);

  if (check_kato->parsed()) return run_check_kato(args);
  if (delaunay->parsed()) return run_delaunay(args);
  if (build->parsed()) return run_build_model(args);
  return run_report(args);
}
