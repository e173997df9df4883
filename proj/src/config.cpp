#include "logfan/config.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

namespace logfan {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path.empty() ? msg : path + ": " + msg);
}

void require_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) fail(path.empty() ? key : path + "." + key, "unknown field");
  }
}

const json& member(const json& j, const std::string& path, const std::string& key) {
  if (!j.contains(key)) fail(path, "missing field \"" + key + "\"");
  return j.at(key);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

long long int_at(const json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) fail(path, "expected an integer");
  return j.get<long long>();
}

bool bool_at(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

IVec vector_at(const json& j, const std::string& path, int len) {
  if (!j.is_array()) fail(path, "expected an array");
  if (int(j.size()) != len)
    fail(path, "expected " + std::to_string(len) + " entries, got " + std::to_string(j.size()));
  IVec v;
  for (size_t i = 0; i < j.size(); ++i)
    v.push_back(Int(int_at(j[i], path + "[" + std::to_string(i) + "]")));
  return v;
}

IntMat matrix_at(const json& j, const std::string& path, int rows, int cols) {
  if (!j.is_array()) fail(path, "expected a matrix (array of rows)");
  if (int(j.size()) != rows)
    fail(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  IntMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    IVec row = vector_at(j[i], path + "[" + std::to_string(i) + "]", cols);
    for (int c = 0; c < cols; ++c) m.at(i, c) = row[c];
  }
  return m;
}

Int residue_char_at(const json& j, const std::string& path) {
  Int p(int_at(j, path));
  if (p != 0 && !is_prime(p))
    fail(path, "residue characteristic must be 0 or a prime (got " + to_string(p) + ")");
  return p;
}

// spec wording for the one numeric rejection users hit most
void check_positive_definite(const IntMat& s, const std::string& path) {
  if (!s.is_symmetric()) fail(path, "b * phi is not symmetric");
  for (int k = 1; k <= s.rows(); ++k) {
    IntMat lead(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) lead.at(i, j) = s.at(i, j);
    Int minor = lead.det();
    if (minor <= 0)
      fail(path, "form not positive definite (leading principal minor " + std::to_string(k) +
                     " is " + to_string(minor) + ")");
  }
}

GroupAction group_at(const json& j, const std::string& path, int rank) {
  require_keys(j, path, {"generators", "order", "residue_char"});
  GroupAction g;
  g.rank = rank;
  const json& gens = member(j, path, "generators");
  if (!gens.is_array()) fail(join(path, "generators"), "expected an array");
  for (size_t i = 0; i < gens.size(); ++i) {
    std::string gpath = join(path, "generators[" + std::to_string(i) + "]");
    const json& entry = gens[i];
    GroupAction::Generator gen;
    gen.name = "g" + std::to_string(i);
    const json* mat = &entry;
    if (entry.is_object()) {
      require_keys(entry, gpath, {"name", "matrix"});
      if (entry.contains("name")) {
        if (!entry.at("name").is_string()) fail(gpath + ".name", "expected a string");
        gen.name = entry.at("name").get<std::string>();
      }
      mat = &member(entry, gpath, "matrix");
    }
    gen.mat = matrix_at(*mat, gpath, rank, rank);
    Int det = gen.mat.det();
    if (det != 1 && det != -1)
      fail(gpath, "generator not unimodular (determinant " + to_string(det) + ")");
    g.generators.push_back(std::move(gen));
  }
  if (j.contains("order")) {
    long long n = int_at(j.at("order"), join(path, "order"));
    if (n <= 0) fail(join(path, "order"), "expected a positive integer");
    g.declared_order = long(n);
  }
  if (j.contains("residue_char"))
    g.residue_char = residue_char_at(j.at("residue_char"), join(path, "residue_char"));
  return g;
}

GroundData ground_at(const json& j, const std::string& path) {
  require_keys(j, path, {"residue_char", "ramification_index", "uniformizer"});
  GroundData g;
  if (j.contains("residue_char"))
    g.residue_char = residue_char_at(j.at("residue_char"), join(path, "residue_char"));
  if (j.contains("ramification_index")) {
    long long e = int_at(j.at("ramification_index"), join(path, "ramification_index"));
    if (e <= 0) fail(join(path, "ramification_index"), "expected a positive integer");
    g.ramification_index = e;
  }
  if (j.contains("uniformizer")) {
    if (!j.at("uniformizer").is_string() || j.at("uniformizer").get<std::string>().empty())
      fail(join(path, "uniformizer"), "expected a nonempty string");
    g.uniformizer = j.at("uniformizer").get<std::string>();
  }
  return g;
}

ModelOptions options_at(const json& j, const std::string& path, long default_max_orbits) {
  require_keys(j, path,
               {"degree_bound", "coverage_grid", "max_orbits", "jobs", "general_criterion"});
  ModelOptions opt;
  opt.max_orbits = default_max_orbits;
  auto positive = [&](const char* key, auto& slot) {
    if (!j.contains(key)) return;
    long long v = int_at(j.at(key), join(path, key));
    if (v <= 0) fail(join(path, key), "expected a positive integer");
    slot = static_cast<std::remove_reference_t<decltype(slot)>>(v);
  };
  positive("degree_bound", opt.degree_bound);
  positive("coverage_grid", opt.coverage_grid);
  positive("max_orbits", opt.max_orbits);
  positive("jobs", opt.jobs);
  if (j.contains("general_criterion"))
    opt.general_criterion = bool_at(j.at("general_criterion"), join(path, "general_criterion"));
  return opt;
}

}  // namespace

JobConfig parse_config_text(const std::string& text, long default_max_orbits) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("", "config must be a JSON object");
  require_keys(j, "",
               {"schema_version", "rank", "b", "phi", "y_embedding", "doubled_shifts", "group",
                "ground", "options", "cones"});

  JobConfig cfg;
  if (j.contains("schema_version")) {
    cfg.schema_version = int(int_at(j.at("schema_version"), "schema_version"));
    if (cfg.schema_version != 1)
      fail("schema_version", "unsupported version " + std::to_string(cfg.schema_version));
  }

  long long rank = int_at(member(j, "", "rank"), "rank");
  if (rank < 0 || rank > 32) fail("rank", "expected an integer between 0 and 32");
  cfg.data.rank = int(rank);
  const int r = cfg.data.rank;

  if (j.contains("b") && j.contains("cones"))
    fail("cones", "cannot combine an explicit cone list with pairing data");

  if (j.contains("cones")) {
    cfg.has_cones = true;
    const json& cones = j.at("cones");
    if (!cones.is_array()) fail("cones", "expected an array");
    for (size_t i = 0; i < cones.size(); ++i) {
      std::string cpath = "cones[" + std::to_string(i) + "]";
      const json& gens = cones[i];
      if (!gens.is_array()) fail(cpath, "expected an array of generators");
      std::vector<IVec> rays;
      for (size_t gi = 0; gi < gens.size(); ++gi) {
        IVec v = vector_at(gens[gi], cpath + "[" + std::to_string(gi) + "]", r + 1);
        if (v[r] < 0)
          fail(cpath + "[" + std::to_string(gi) + "]", "generator height must be nonnegative");
        rays.push_back(std::move(v));
      }
      cfg.cones.push_back(cone_from_generators(r + 1, Side::N, rays));
    }
  } else {
    cfg.data.pairing = matrix_at(member(j, "", "b"), "b", r, r);
  }

  if (j.contains("phi")) {
    if (cfg.has_cones) fail("phi", "explicit cone lists take no pairing data");
    cfg.data.phi = matrix_at(j.at("phi"), "phi", r, r);
  }
  if (j.contains("y_embedding")) {
    if (cfg.has_cones) fail("y_embedding", "explicit cone lists take no pairing data");
    cfg.data.y_embedding = matrix_at(j.at("y_embedding"), "y_embedding", r, r);
  }
  if (j.contains("doubled_shifts")) {
    if (cfg.has_cones) fail("doubled_shifts", "explicit cone lists take no pairing data");
    cfg.data.doubled_shifts = vector_at(j.at("doubled_shifts"), "doubled_shifts", r);
  }

  if (!cfg.has_cones) {
    IntMat phi = cfg.data.phi ? *cfg.data.phi : IntMat::identity(r);
    check_positive_definite(cfg.data.pairing * phi, "b");
  }

  if (j.contains("group")) cfg.data.group = group_at(j.at("group"), "group", r);
  cfg.data.group.rank = r;
  if (j.contains("ground")) cfg.data.ground = ground_at(j.at("ground"), "ground");
  if (j.contains("options"))
    cfg.options = options_at(j.at("options"), "options", default_max_orbits);
  else
    cfg.options.max_orbits = default_max_orbits;
  return cfg;
}

JobConfig parse_config(const std::string& path, long default_max_orbits) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), default_max_orbits);
}

}  // namespace logfan
