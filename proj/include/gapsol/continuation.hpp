#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "gapsol/solver.hpp"

namespace gapsol {

struct GaussianSeed {
  double sigma = 0.5;
  double target_power = 1.0;
};

struct FieldSeed {
  Field field;
};

struct SweepPlan {
  std::vector<double> lambdas;  // strictly monotone along the path
  std::variant<GaussianSeed, FieldSeed> seed = GaussianSeed{};
  std::string label;  // direction tag for multi-path runs ("up", "down", ...)
  std::vector<double> save_fields_at;
};

// start, start +/- step, ..., with the final value clamped to exactly end.
std::vector<double> lambda_range(double start, double end, double step);

struct CurveRecord {
  double lambda = 0.0;
  double power = 0.0;
  int newton_iters = 0;
  double mean_gmres_iters = 0.0;
  bool converged = false;
};

struct CurveResult {
  std::string label;
  std::vector<CurveRecord> records;  // in path order; failures included
  std::vector<std::pair<double, Field>> saved_fields;
  std::optional<Field> final_field;  // last converged solution on the path
  bool completed = false;            // every lambda on the path converged
};

// Gaussian c*exp(-|x - center|^2 / (2 sigma^2)) at the box center, with c
// fixed from the discrete sum so that power(seed) = target_power.
Field gaussian_seed(const Grid& g, double sigma, double target_power);

using SweepProgress = std::function<void(const CurveRecord&)>;

// Walks the lambda path, warm-starting each Newton solve from the previous
// converged solution; the first point uses the plan's seed. A failed solve
// ends the path (its record is still appended).
CurveResult sweep(const Model& m, const Grid& g, const SweepPlan& plan,
                  const NewtonOptions& opts, const SweepProgress& progress = {});

// Built-in reproduction experiments; the -half variants run the defocusing
// cases at half resolution for desk-scale turnaround.
struct Preset {
  std::string name;
  std::string description;
  Model model;
  Grid grid;
  std::vector<SweepPlan> paths;
  NewtonOptions solver;
};

const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view name);

}  // namespace gapsol
