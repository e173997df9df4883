#include "logfan/config.hpp"

#include "doctest.h"

using namespace logfan;

TEST_CASE("the minimal config parses with defaults") {
  auto cfg = parse_config_text(R"({"rank":1,"b":[[3]],"group":{"generators":[],"residue_char":5}})");
  CHECK(cfg.schema_version == 1);
  CHECK(cfg.data.rank == 1);
  CHECK(cfg.data.pairing.at(0, 0) == 3);
  CHECK_FALSE(cfg.data.phi.has_value());
  CHECK_FALSE(cfg.data.y_embedding.has_value());
  CHECK(cfg.data.doubled_shifts.empty());
  CHECK(cfg.data.group.generators.empty());
  CHECK(cfg.data.group.residue_char == 5);
  CHECK(cfg.data.ground.uniformizer == "pi");
  CHECK_FALSE(cfg.has_cones);
  CHECK(cfg.options.degree_bound == 8);
  CHECK(cfg.options.max_orbits == 100000);
  CHECK(cfg.options.jobs == 1);

  auto rep = build_model(cfg.data, cfg.options);
  CHECK(rep.verified);
}

TEST_CASE("every field of a full config lands in the right slot") {
  auto cfg = parse_config_text(R"({
    "schema_version": 1,
    "rank": 2,
    "b": [[2, 0], [0, 2]],
    "phi": [[1, 0], [0, 1]],
    "y_embedding": [[1, 0], [0, 1]],
    "doubled_shifts": [2, 2],
    "group": {
      "generators": [{"name": "rot", "matrix": [[0, -1], [1, 0]]}],
      "order": 4,
      "residue_char": 3
    },
    "ground": {"residue_char": 3, "ramification_index": 2, "uniformizer": "t"},
    "options": {"degree_bound": 6, "coverage_grid": 3, "max_orbits": 5000, "jobs": 2,
                "general_criterion": true}
  })");
  CHECK(cfg.data.rank == 2);
  REQUIRE(cfg.data.phi.has_value());
  CHECK(cfg.data.phi->is_identity());
  CHECK(cfg.data.doubled_shifts == std::vector<Int>{Int(2), Int(2)});
  REQUIRE(cfg.data.group.generators.size() == 1);
  CHECK(cfg.data.group.generators[0].name == "rot");
  CHECK(cfg.data.group.generators[0].mat.at(0, 1) == -1);
  CHECK(cfg.data.group.declared_order == 4);
  CHECK(cfg.data.ground.ramification_index == 2);
  CHECK(cfg.data.ground.uniformizer == "t");
  CHECK(cfg.options.degree_bound == 6);
  CHECK(cfg.options.coverage_grid == 3);
  CHECK(cfg.options.max_orbits == 5000);
  CHECK(cfg.options.jobs == 2);
  CHECK(cfg.options.general_criterion);
}

TEST_CASE("schema violations name the offending field") {
  auto rejects = [](const std::string& text, const std::string& needle) {
    CHECK_THROWS_WITH_AS(parse_config_text(text), doctest::Contains(needle.c_str()), ConfigError);
  };

  rejects(R"({"b":[[3]]})", "missing field \"rank\"");
  rejects(R"({"rank":1})", "missing field \"b\"");
  rejects(R"({"rank":-1,"b":[[3]]})", "rank");
  rejects(R"({"rank":1,"b":[[3]],"grupo":{}})", "grupo: unknown field");
  rejects(R"({"rank":1,"b":[[3]],"group":{"gens":[]}})", "group.gens");
  rejects(R"({"rank":2,"b":[[2,0],[0,2]],"options":{"jobs":0}})", "options.jobs");
  rejects(R"({"rank":1,"b":[[3.5]]})", "b[0][0]: expected an integer");
  rejects(R"({"rank":2,"b":[[2,0],[0,2,1]]})", "b[1]: expected 2 entries, got 3");
  rejects(R"({"rank":2,"b":[[2,0]]})", "b: expected 2 rows, got 1");
  rejects(R"({"rank":1,"b":[[3]],"doubled_shifts":[1,2]})", "doubled_shifts");
  rejects(R"({"rank":1,"b":[[3]],"schema_version":2})", "unsupported version 2");
  rejects(R"({"rank":1,"b":[[3]],"group":{"generators":[],"residue_char":6}})",
          "group.residue_char: residue characteristic must be 0 or a prime (got 6)");
  rejects(R"({"rank":1,"b":[[3]],"ground":{"uniformizer":""}})", "ground.uniformizer");
  rejects(R"([1,2,3])", "config must be a JSON object");
  rejects("{not json", "config is not valid JSON");
}

TEST_CASE("definiteness failures report the failing principal minor") {
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"rank":1,"b":[[0]]})"),
                       doctest::Contains("form not positive definite (leading principal minor 1 is 0)"),
                       ConfigError);
  // first minor positive, second fails
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"rank":2,"b":[[2,3],[3,2]]})"),
                       doctest::Contains("leading principal minor 2 is -5"), ConfigError);
  // definiteness applies to b * phi, not b alone
  auto cfg = parse_config_text(R"({"rank":1,"b":[[-3]],"phi":[[-1]]})");
  CHECK(cfg.data.pairing.at(0, 0) == -3);
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"rank":2,"b":[[2,1],[0,2]]})"),
                       doctest::Contains("not symmetric"), ConfigError);
}

TEST_CASE("group generators must be unimodular") {
  CHECK_THROWS_WITH_AS(
      parse_config_text(R"({"rank":1,"b":[[3]],"group":{"generators":[[[2]]]}})"),
      doctest::Contains("group.generators[0]: generator not unimodular (determinant 2)"),
      ConfigError);
  // named form of the same violation
  CHECK_THROWS_WITH_AS(
      parse_config_text(
          R"({"rank":2,"b":[[2,0],[0,2]],"group":{"generators":[{"name":"s","matrix":[[1,0],[0,0]]}]}})"),
      doctest::Contains("generator not unimodular (determinant 0)"), ConfigError);
}

TEST_CASE("explicit cone lists exclude pairing data") {
  auto cfg = parse_config_text(R"({"rank":1,"cones":[[[0,1]],[[1,1]],[[0,1],[1,1]]]})");
  CHECK(cfg.has_cones);
  REQUIRE(cfg.cones.size() == 3);
  CHECK(cfg.cones[2].dim() == 2);
  CHECK(cfg.data.rank == 1);

  auto rejects = [](const std::string& text, const std::string& needle) {
    CHECK_THROWS_WITH_AS(parse_config_text(text), doctest::Contains(needle.c_str()), ConfigError);
  };
  rejects(R"({"rank":1,"b":[[3]],"cones":[[[0,1]]]})", "cannot combine");
  rejects(R"({"rank":1,"cones":[[[0,1,0]]]})", "cones[0][0]: expected 2 entries");
  rejects(R"({"rank":1,"cones":[[[1,-1]]]})", "generator height must be nonnegative");
  rejects(R"({"rank":1,"cones":[[[0,1]]],"phi":[[1]]})", "explicit cone lists take no pairing data");
}

TEST_CASE("the default orbit cap is adjustable") {
  auto cfg = parse_config_text(R"({"rank":1,"b":[[3]]})", 7);
  CHECK(cfg.options.max_orbits == 7);
  // an explicit value wins over the ambient default
  cfg = parse_config_text(R"({"rank":1,"b":[[3]],"options":{"max_orbits":9}})", 7);
  CHECK(cfg.options.max_orbits == 9);
}

TEST_CASE("parse_config reads from a file") {
  CHECK_THROWS_WITH_AS(parse_config("/nonexistent/job.json"), doctest::Contains("cannot read"),
                       ConfigError);
}
