#include "gapsol/io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <fstream>

#include "gapsol/spectral.hpp"

static_assert(std::endian::native == std::endian::little,
              "field dumps are little-endian; big-endian hosts are unsupported");

namespace gapsol {

namespace fs = std::filesystem;

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string lambda_token(double lambda) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), lambda);
  return std::string(buf, res.ptr);
}

namespace {

void atomic_write(const fs::path& path, const std::string& bytes) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed: " + path.string() + ": " + ec.message());
}

}  // namespace

void write_curve_csv(const fs::path& path,
                     std::span<const CurveRecord> records) {
  std::string out = "lambda,power,newton_iters,mean_gmres_iters,converged\n";
  for (const CurveRecord& r : records) {
    out += format_g17(r.lambda);
    out += ',';
    out += format_g17(r.power);
    out += ',';
    out += std::to_string(r.newton_iters);
    out += ',';
    out += format_g17(r.mean_gmres_iters);
    out += ',';
    out += r.converged ? '1' : '0';
    out += '\n';
  }
  atomic_write(path, out);
}

fs::path write_field(const fs::path& dir, double lambda, const Field& f,
                     const nlohmann::json& model_spec) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const std::string token = lambda_token(lambda);
  fs::path data_path = dir / ("field_" + token + ".f64");
  fs::path meta_path = dir / ("field_" + token + ".meta");

  std::string bytes(reinterpret_cast<const char*>(f.data()),
                    f.size() * sizeof(double));
  atomic_write(data_path, bytes);

  nlohmann::json meta = {
      {"d", f.grid.dim},           {"n", f.grid.n},
      {"box_len", f.grid.box_len}, {"origin", f.grid.origin},
      {"lambda", lambda},          {"power", power(f)},
      {"model", model_spec},
  };
  atomic_write(meta_path, meta.dump(2) + "\n");
  return data_path;
}

std::pair<Field, FieldMeta> read_field(const fs::path& f64_path) {
  fs::path meta_path = f64_path;
  meta_path.replace_extension(".meta");
  std::ifstream meta_in(meta_path);
  if (!meta_in) throw IoError("missing field sidecar: " + meta_path.string());
  nlohmann::json meta;
  try {
    meta_in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad field sidecar " + meta_path.string() + ": " + e.what());
  }

  FieldMeta fm;
  try {
    fm.dim = meta.at("d").get<int>();
    fm.n = meta.at("n").get<int>();
    fm.box_len = meta.at("box_len").get<double>();
    fm.origin = meta.value("origin", 0.0);
    fm.lambda = meta.value("lambda", 0.0);
    fm.power = meta.value("power", 0.0);
    if (meta.contains("model")) fm.model = meta.at("model");
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad field sidecar " + meta_path.string() + ": " + e.what());
  }

  Grid g = build_grid(fm.dim, fm.n, fm.box_len, /*centered=*/false);
  g.origin = fm.origin;
  Field f(g);
  std::ifstream in(f64_path, std::ios::binary);
  if (!in) throw IoError("cannot open field dump: " + f64_path.string());
  in.read(reinterpret_cast<char*>(f.data()),
          static_cast<std::streamsize>(f.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(f.size() * sizeof(double)))
    throw IoError("field dump truncated: " + f64_path.string());
  char extra;
  if (in.read(&extra, 1))
    throw IoError("field dump larger than expected: " + f64_path.string());
  return {std::move(f), std::move(fm)};
}

}  // namespace gapsol
