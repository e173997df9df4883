// JSON job descriptions: the degeneration data plus run options, or an
// explicit cone list for decomposition-only checks. Parsing validates the
// schema and reports every violation with the path of the offending field.
#pragma once

#include "logfan/degeneration.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace logfan {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct JobConfig {
  int schema_version = 1;
  DegenerationData data;

  // explicit decomposition in N x height, mutually exclusive with pairing data
  bool has_cones = false;
  std::vector<RationalCone> cones;

  ModelOptions options;
};

// parses and schema-validates a job description; throws ConfigError with a
// field path on any violation. default_max_orbits seeds options.max_orbits
// when the config does not set it.
JobConfig parse_config_text(const std::string& text, long default_max_orbits = 100000);

// reads the file and delegates to parse_config_text
JobConfig parse_config(const std::string& path, long default_max_orbits = 100000);

}  // namespace logfan
