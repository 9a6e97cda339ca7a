// End-to-end checks of the gapsol binary: exit codes, progress output and
// emitted files. The binary path arrives via the GAPSOL_BIN environment
// variable set by CTest.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "gapsol/io.hpp"
#include "gapsol/spectral.hpp"

using namespace gapsol;
namespace fs = std::filesystem;
using doctest::Approx;

namespace {

std::string binary() {
  const char* p = std::getenv("GAPSOL_BIN");
  REQUIRE_MESSAGE(p, "GAPSOL_BIN must point at the gapsol executable");
  return p;
}

int run(const std::string& args) {
  const std::string cmd = binary() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

fs::path temp_dir(const char* tag) {
  fs::path d = fs::temp_directory_path() / (std::string("gapsol_cli_") + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

// Small 1d cubic configuration that solves in well under a second.
fs::path write_cubic_config(const fs::path& dir) {
  fs::path p = dir / "cubic1d.json";
  std::ofstream out(p);
  out << R"({
    "model": {"kind": "kerr", "V0": 0.0, "sigma": 1, "kinetic_factor": 1.0},
    "grid": {"dim": 1, "n": 64, "box_len": 16.0},
    "path": {"start": -1.0, "end": -1.5, "step": 0.25, "label": "down"},
    "seed": {"type": "gaussian", "sigma": 1.0, "power": 3.0}
  })";
  return p;
}

}  // namespace

TEST_CASE("presets subcommand lists the built-ins") {
  CHECK(run("presets") == 0);
}

TEST_CASE("usage and config errors exit with 2") {
  CHECK(run("definitely-not-a-subcommand") == 2);
  CHECK(run("sweep") == 2);                            // missing --preset/--config
  CHECK(run("sweep --preset nope-nope") == 2);         // unknown preset
  CHECK(run("solve --preset kerr-focusing") == 2);     // missing --lambda
  CHECK(run("sweep --preset kerr-focusing --config x.json") == 2);  // exclusive
  fs::path dir = temp_dir("badcfg");
  std::ofstream(dir / "bad.json") << "{\"model\": 3}";
  CHECK(run("sweep --config " + (dir / "bad.json").string()) == 2);
}

TEST_CASE("sweep writes curve.csv and the field dumps") {
  fs::path dir = temp_dir("sweep");
  fs::path cfg = write_cubic_config(dir);
  fs::path out = dir / "out";
  CHECK(run("sweep --config " + cfg.string() + " --out " + out.string()) == 0);

  std::ifstream csv(out / "curve.csv");
  REQUIRE(csv);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "lambda,power,newton_iters,mean_gmres_iters,converged");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  CHECK(rows == 3);  // -1.0, -1.25, -1.5

  // Endpoint dumps exist and re-read as valid fields.
  auto [f, meta] = read_field(out / "field_-1.f64");
  CHECK(meta.lambda == -1.0);
  CHECK(f.grid.n == 64);
  CHECK(power(f) == Approx(meta.power).epsilon(1e-14));
  CHECK(fs::exists(out / "field_-1.5.f64"));
}

TEST_CASE("solve exits 0 on convergence, 1 on failure") {
  fs::path dir = temp_dir("solve");
  fs::path cfg = write_cubic_config(dir);
  fs::path out = dir / "out";
  CHECK(run("solve --config " + cfg.string() + " --lambda -1 --out " +
            out.string()) == 0);
  CHECK(fs::exists(out / "field_-1.f64"));
  CHECK(fs::exists(out / "curve.csv"));

  // An unreachable tolerance cannot converge.
  fs::path hard = dir / "hard.json";
  std::ofstream(hard) << R"({
    "model": {"kind": "kerr", "V0": 0.0, "sigma": 1, "kinetic_factor": 1.0},
    "grid": {"dim": 1, "n": 64, "box_len": 16.0},
    "path": {"values": [-1.0]},
    "seed": {"type": "gaussian", "sigma": 1.0, "power": 3.0},
    "solver": {"max_newton": 1, "res_tol": 1e-14}
  })";
  CHECK(run("solve --config " + hard.string() + " --lambda -1") == 1);
}

TEST_CASE("petviashvili baseline: converges for the focusing cubic, fails mid-gap") {
  fs::path dir = temp_dir("pv");
  fs::path cfg = write_cubic_config(dir);
  CHECK(run("petviashvili --config " + cfg.string() + " --lambda -1") == 0);
  // lambda > 0 makes the scheme's shifted symbol indefinite: no convergence.
  CHECK(run("petviashvili --config " + cfg.string() + " --lambda 2") == 1);
  // The baseline refuses non-cubic models.
  CHECK(run("petviashvili --preset saturable-focusing --lambda 14") == 2);
}

TEST_CASE("fixed-norm subcommand recovers the sech-family eigenvalue") {
  fs::path dir = temp_dir("fixed");
  fs::path cfg = write_cubic_config(dir);
  fs::path out = dir / "out";
  // For N = -u^3 the lambda = -1 soliton has power 4: norm 2.
  CHECK(run("fixed-norm --config " + cfg.string() +
            " --norm 2 --lambda0 -0.8 --out " + out.string()) == 0);
  bool found = false;
  for (const auto& e : fs::directory_iterator(out))
    if (e.path().extension() == ".meta") found = true;
  CHECK(found);
}
