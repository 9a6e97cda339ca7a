// Command-line front end: preset reproduction runs, single solves, the
// fixed-norm mode and the Petviashvili baseline.
//
// Exit codes: 0 success, 1 solver non-convergence, 2 usage/config/IO error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "gapsol/config.hpp"
#include "gapsol/io.hpp"

namespace {

using namespace gapsol;

RunConfig load_run(const std::string& preset, const std::string& config_path) {
  if (!preset.empty()) return preset_config(preset);
  std::ifstream in(config_path);
  if (!in) throw ConfigError("config: cannot open file: " + config_path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Field materialize_seed(const SweepPlan& plan, const Grid& g) {
  if (const auto* gs = std::get_if<GaussianSeed>(&plan.seed))
    return gaussian_seed(g, gs->sigma, gs->target_power);
  return std::get<FieldSeed>(plan.seed).field;
}

void print_record(const CurveRecord& rec) {
  std::fprintf(stderr, "lambda=%-12g P=%-12g newton=%-3d gmres_mean=%-6.1f%s\n",
               rec.lambda, rec.power, rec.newton_iters, rec.mean_gmres_iters,
               rec.converged ? "" : "  [NOT CONVERGED]");
}

int run_sweep(const RunConfig& rc, const std::string& out_dir) {
  std::vector<CurveRecord> all_records;
  std::vector<std::pair<double, Field>> saved;
  bool all_ok = true;
  for (const SweepPlan& plan : rc.paths) {
    if (!plan.label.empty())
      std::fprintf(stderr, "# path %s (%zu lambda values)\n", plan.label.c_str(),
                   plan.lambdas.size());
    CurveResult res = sweep(rc.model, rc.grid, plan, rc.solver, print_record);
    all_records.insert(all_records.end(), res.records.begin(), res.records.end());
    for (auto& sf : res.saved_fields) saved.push_back(std::move(sf));
    if (!res.completed) {
      all_ok = false;
      const double last_ok =
          res.records.size() > 1 ? res.records[res.records.size() - 2].lambda
                                 : std::numeric_limits<double>::quiet_NaN();
      std::fprintf(stderr,
                   "# path %s stopped at lambda=%g (last converged: %g)\n",
                   plan.label.c_str(), res.records.back().lambda, last_ok);
      break;
    }
  }

  const std::filesystem::path dir = out_dir.empty() ? rc.output.dir : out_dir;
  write_curve_csv(dir / "curve.csv", all_records);
  const auto model_json = model_to_json(rc.model);
  for (const auto& [lam, f] : saved) write_field(dir, lam, f, model_json);
  std::fprintf(stderr, "# wrote %s (%zu rows, %zu field dumps)\n",
               (dir / "curve.csv").c_str(), all_records.size(), saved.size());
  return all_ok ? 0 : 1;
}

int run_solve(const RunConfig& rc, double lambda, const std::string& out_dir) {
  Field u0 = materialize_seed(rc.paths.at(0), rc.grid);
  auto [u, rep] = newton_solve(rc.model, lambda, u0, rc.solver);
  double mean_g = 0.0;
  for (int it : rep.gmres_iters_per_step) mean_g += it;
  if (!rep.gmres_iters_per_step.empty()) mean_g /= rep.gmres_iters_per_step.size();
  print_record({lambda, rep.final_power, rep.newton_iters, mean_g, rep.converged});
  if (!out_dir.empty()) {
    write_field(out_dir, lambda, u, model_to_json(rc.model));
    write_curve_csv(std::filesystem::path(out_dir) / "curve.csv",
                    std::vector<CurveRecord>{{lambda, rep.final_power,
                                              rep.newton_iters, mean_g,
                                              rep.converged}});
  }
  return rep.converged ? 0 : 1;
}

int run_fixed_norm(const RunConfig& rc, double target_norm, double lambda0,
                   const std::string& out_dir) {
  Field u0 = materialize_seed(rc.paths.at(0), rc.grid);
  scale(u0, target_norm / norm2(u0));
  FixedNormResult res = newton_fixed_norm(rc.model, target_norm, u0, lambda0, rc.solver);
  std::fprintf(stderr,
               "fixed-norm: lambda=%.12g P=%g newton=%d %s\n", res.lambda,
               res.report.final_power, res.report.newton_iters,
               res.report.converged ? "converged" : "NOT converged");
  if (res.report.failure == NewtonFailure::bordered_singularity)
    std::fprintf(stderr, "fixed-norm: bordered system singular (turning point?)\n");
  if (!out_dir.empty())
    write_field(out_dir, res.lambda, res.u, model_to_json(rc.model));
  return res.report.converged ? 0 : 1;
}

int run_petviashvili(const RunConfig& rc, double lambda, double gamma,
                     int max_iters, double tol, const std::string& out_dir) {
  const auto* kerr = std::get_if<KerrModel>(&rc.model.kind);
  if (!kerr || kerr->sigma != +1)
    throw ConfigError(
        "petviashvili: the baseline applies to the focusing cubic model "
        "(kind=kerr, sigma=+1); the lattice potential is ignored");
  Field u0 = materialize_seed(rc.paths.at(0), rc.grid);
  // The scheme inverts (kinetic*(-Lap) + shift) with shift = -lambda, the
  // sign that matches -Lap u - u^3 = lambda u without the potential.
  auto [u, rep] = petviashvili(-lambda, u0, gamma, max_iters, tol,
                               rc.model.kinetic_factor);
  std::fprintf(stderr, "petviashvili: iters=%d %s last_step=%g P=%g\n",
               rep.iterations,
               rep.converged ? "converged"
                             : (rep.diverged ? "diverged" : "iteration cap"),
               rep.step_norms.empty() ? 0.0 : rep.step_norms.back(), power(u));
  if (!out_dir.empty() && rep.converged)
    write_field(out_dir, lambda, u, model_to_json(rc.model));
  return rep.converged ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gap-soliton solver: Newton iteration with a sparsifying "
               "preconditioner on periodic pseudospectral grids"};
  app.require_subcommand(1);

  std::string preset, config_path, out_dir;
  const auto add_common = [&](CLI::App* cmd, bool need_source) {
    auto* p = cmd->add_option("--preset", preset, "built-in preset name");
    auto* c = cmd->add_option("--config", config_path, "JSON config file");
    p->excludes(c);
    if (need_source) {
      // one of the two is required
      cmd->callback([&, cmd]() {
        if (preset.empty() && config_path.empty())
          throw CLI::RequiredError(cmd->get_name() + ": --preset or --config");
      });
    }
    cmd->add_option("--out", out_dir, "output directory");
  };

  auto* cmd_presets = app.add_subcommand("presets", "list built-in presets");

  auto* cmd_sweep = app.add_subcommand(
      "sweep", "run the continuation path(s) and write curve.csv + field dumps");
  add_common(cmd_sweep, true);

  double lambda = 0.0;
  auto* cmd_solve = app.add_subcommand("solve", "single Newton solve at one lambda");
  add_common(cmd_solve, true);
  cmd_solve->add_option("--lambda", lambda, "eigenvalue")->required();

  double target_norm = 0.0, lambda0 = 0.0;
  auto* cmd_fixed = app.add_subcommand(
      "fixed-norm", "bordered Newton with prescribed ||u||_2 and free lambda");
  add_common(cmd_fixed, true);
  cmd_fixed->add_option("--norm", target_norm, "target L2 norm m")->required();
  cmd_fixed->add_option("--lambda0", lambda0, "initial lambda")->required();

  double gamma = 1.5, pv_tol = 1e-10;
  int pv_iters = 500;
  auto* cmd_pv = app.add_subcommand(
      "petviashvili", "stabilized fixed-point baseline (cubic, no potential)");
  add_common(cmd_pv, true);
  cmd_pv->add_option("--lambda", lambda, "eigenvalue")->required();
  cmd_pv->add_option("--gamma", gamma, "stabilizer exponent");
  cmd_pv->add_option("--max-iters", pv_iters, "iteration cap");
  cmd_pv->add_option("--tol", pv_tol, "sup-norm step tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_presets->parsed()) {
      for (const Preset& p : gapsol::presets())
        std::printf("%-26s %s\n", p.name.c_str(), p.description.c_str());
      return 0;
    }
    const RunConfig rc = load_run(preset, config_path);
    if (cmd_sweep->parsed()) return run_sweep(rc, out_dir);
    if (cmd_solve->parsed()) return run_solve(rc, lambda, out_dir);
    if (cmd_fixed->parsed()) return run_fixed_norm(rc, target_norm, lambda0, out_dir);
    if (cmd_pv->parsed())
      return run_petviashvili(rc, lambda, gamma, pv_iters, pv_tol, out_dir);
  } catch (const gapsol::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const gapsol::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 1;
  }
  return 2;
}
