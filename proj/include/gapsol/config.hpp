#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gapsol/continuation.hpp"

namespace gapsol {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputSpec {
  std::string dir = "out";
  // When set, overrides each path's save_fields_at list.
  std::optional<std::vector<double>> save_fields_at;
};

struct RunConfig {
  std::string preset_name;  // empty for fully explicit configs
  Model model;
  Grid grid;
  NewtonOptions solver;
  std::vector<SweepPlan> paths;
  OutputSpec output;
};

// Parses and validates a JSON run configuration (schema documented in the
// README). Unknown keys are rejected; errors name the offending key and the
// expected type. A {"preset": ...} document loads a built-in preset and may
// override "solver" and "output" only.
RunConfig parse_config(const std::string& text);

RunConfig preset_config(std::string_view name);

// Model spec as JSON, as embedded in field sidecars and configs.
nlohmann::json model_to_json(const Model& m);

}  // namespace gapsol
