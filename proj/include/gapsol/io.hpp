#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "gapsol/continuation.hpp"
#include "gapsol/grid.hpp"

namespace gapsol {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// %.17g formatting: round-trip exact for doubles.
std::string format_g17(double v);

// Shortest round-trip decimal form, used in file names (field_<lambda>.f64).
std::string lambda_token(double lambda);

// curve.csv with header lambda,power,newton_iters,mean_gmres_iters,converged.
// Writes are atomic (temp file + rename) and byte-stable for equal inputs.
void write_curve_csv(const std::filesystem::path& path,
                     std::span<const CurveRecord> records);

struct FieldMeta {
  int dim = 0;
  int n = 0;
  double box_len = 0.0;
  double origin = 0.0;
  double lambda = 0.0;
  double power = 0.0;
  nlohmann::json model;
};

// field_<lambda>.f64 (little-endian doubles, row-major) plus the
// field_<lambda>.meta JSON sidecar. Returns the .f64 path.
std::filesystem::path write_field(const std::filesystem::path& dir,
                                  double lambda, const Field& f,
                                  const nlohmann::json& model_spec);

// Reads a .f64 dump through its .meta sidecar.
std::pair<Field, FieldMeta> read_field(const std::filesystem::path& f64_path);

}  // namespace gapsol
