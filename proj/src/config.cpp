#include "gapsol/config.hpp"

#include <cmath>

#include "gapsol/io.hpp"

namespace gapsol {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw ConfigError("config: " + msg);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) fail("unknown key \"" + where + it.key() + "\"");
  }
}

const json& require_obj(const json& obj, const std::string& where,
                        const char* key) {
  if (!obj.contains(key)) fail("missing key \"" + where + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_object()) fail("\"" + where + key + "\" must be an object");
  return v;
}

double require_num(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) fail("missing key \"" + where + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number()) fail("\"" + where + key + "\" must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail("\"" + where + key + "\" must be finite");
  return d;
}

double optional_num(const json& obj, const std::string& where, const char* key,
                    double dflt) {
  return obj.contains(key) ? require_num(obj, where, key) : dflt;
}

int require_int(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) fail("missing key \"" + where + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail("\"" + where + key + "\" must be an integer");
  return v.get<int>();
}

int optional_int(const json& obj, const std::string& where, const char* key,
                 int dflt) {
  return obj.contains(key) ? require_int(obj, where, key) : dflt;
}

bool optional_bool(const json& obj, const std::string& where, const char* key,
                   bool dflt) {
  if (!obj.contains(key)) return dflt;
  const json& v = obj.at(key);
  if (!v.is_boolean()) fail("\"" + where + key + "\" must be a boolean");
  return v.get<bool>();
}

std::string require_str(const json& obj, const std::string& where,
                        const char* key) {
  if (!obj.contains(key)) fail("missing key \"" + where + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_string()) fail("\"" + where + key + "\" must be a string");
  return v.get<std::string>();
}

std::vector<double> num_array(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) fail("\"" + what + "\" must be a non-empty array of numbers");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) fail("\"" + what + "\" must contain only numbers");
    const double d = e.get<double>();
    if (!std::isfinite(d)) fail("\"" + what + "\" must contain finite numbers");
    out.push_back(d);
  }
  return out;
}

Model parse_model(const json& m) {
  const std::string kind = require_str(m, "model.", "kind");
  const double kinetic = optional_num(m, "model.", "kinetic_factor", 0.5);
  if (kind == "kerr") {
    check_keys(m, "model.", {"kind", "V0", "sigma", "kinetic_factor"});
    const int sigma = require_int(m, "model.", "sigma");
    if (sigma != 1 && sigma != -1) fail("\"model.sigma\" must be +1 or -1");
    return make_kerr(require_num(m, "model.", "V0"), sigma, kinetic);
  }
  if (kind == "saturable") {
    check_keys(m, "model.", {"kind", "V0", "A", "kinetic_factor"});
    return make_saturable(require_num(m, "model.", "V0"),
                          optional_num(m, "model.", "A", 1.0), kinetic);
  }
  fail("\"model.kind\" must be \"kerr\" or \"saturable\"");
}

Grid parse_grid(const json& g) {
  check_keys(g, "grid.", {"dim", "n", "box_len", "centered"});
  const int dim = optional_int(g, "grid.", "dim", 2);
  const int n = require_int(g, "grid.", "n");
  const double box_len = require_num(g, "grid.", "box_len");
  const bool centered = optional_bool(g, "grid.", "centered", true);
  try {
    return build_grid(dim, n, box_len, centered);
  } catch (const std::invalid_argument& e) {
    fail(std::string("grid: ") + e.what());
  }
}

NewtonOptions parse_solver(const json& s, NewtonOptions base) {
  check_keys(s, "solver.",
             {"res_tol", "max_newton", "damping", "max_halvings", "stencil_b",
              "stencil_w", "gmres"});
  base.res_tol = optional_num(s, "solver.", "res_tol", base.res_tol);
  if (!(base.res_tol > 0.0)) fail("\"solver.res_tol\" must be positive");
  base.max_newton = optional_int(s, "solver.", "max_newton", base.max_newton);
  base.max_halvings = optional_int(s, "solver.", "max_halvings", base.max_halvings);
  base.stencil_b = optional_int(s, "solver.", "stencil_b", base.stencil_b);
  base.stencil_w = optional_int(s, "solver.", "stencil_w", base.stencil_w);
  if (s.contains("damping")) {
    const std::string d = require_str(s, "solver.", "damping");
    if (d == "none")
      base.damping = Damping::none;
    else if (d == "backtracking")
      base.damping = Damping::backtracking;
    else
      fail("\"solver.damping\" must be \"none\" or \"backtracking\"");
  }
  if (s.contains("gmres")) {
    const json& k = require_obj(s, "solver.", "gmres");
    check_keys(k, "solver.gmres.", {"rel_tol", "restart", "max_iters"});
    base.krylov.rel_tol = optional_num(k, "solver.gmres.", "rel_tol", base.krylov.rel_tol);
    if (!(base.krylov.rel_tol > 0.0 && base.krylov.rel_tol < 1.0))
      fail("\"solver.gmres.rel_tol\" must lie in (0, 1)");
    base.krylov.restart = optional_int(k, "solver.gmres.", "restart", base.krylov.restart);
    base.krylov.max_iters = optional_int(k, "solver.gmres.", "max_iters", base.krylov.max_iters);
    if (base.krylov.restart < 1 || base.krylov.max_iters < 1)
      fail("\"solver.gmres\": restart and max_iters must be >= 1");
  }
  return base;
}

OutputSpec parse_output(const json& o, OutputSpec base) {
  check_keys(o, "output.", {"dir", "save_fields_at"});
  if (o.contains("dir")) base.dir = require_str(o, "output.", "dir");
  if (o.contains("save_fields_at"))
    base.save_fields_at = num_array(o.at("save_fields_at"), "output.save_fields_at");
  return base;
}

SweepPlan parse_path_entry(const json& p, const std::string& where) {
  check_keys(p, where + ".",
             {"start", "end", "step", "values", "label", "save_fields_at"});
  SweepPlan plan;
  if (p.contains("values")) {
    if (p.contains("start") || p.contains("end") || p.contains("step"))
      fail("\"" + where + "\": give either values or start/end/step, not both");
    plan.lambdas = num_array(p.at("values"), where + ".values");
  } else {
    const double start = require_num(p, where + ".", "start");
    const double end = require_num(p, where + ".", "end");
    const double step = require_num(p, where + ".", "step");
    if (!(step > 0.0)) fail("\"" + where + ".step\" must be positive");
    plan.lambdas = lambda_range(start, end, step);
  }
  if (p.contains("label")) plan.label = require_str(p, where + ".", "label");
  if (p.contains("save_fields_at"))
    plan.save_fields_at = num_array(p.at("save_fields_at"), where + ".save_fields_at");
  return plan;
}

void apply_seed(const json& s, const Grid& grid, std::vector<SweepPlan>& plans) {
  check_keys(s, "seed.", {"type", "sigma", "power", "path"});
  const std::string type = require_str(s, "seed.", "type");
  if (type == "gaussian") {
    GaussianSeed gs;
    gs.sigma = optional_num(s, "seed.", "sigma", 0.5);
    gs.target_power = require_num(s, "seed.", "power");
    if (!(gs.sigma > 0.0)) fail("\"seed.sigma\" must be positive");
    if (!(gs.target_power > 0.0)) fail("\"seed.power\" must be positive");
    for (auto& p : plans) p.seed = gs;
  } else if (type == "file") {
    const std::string path = require_str(s, "seed.", "path");
    Field f;
    try {
      f = read_field(path).first;
    } catch (const IoError& e) {
      fail(std::string("seed: ") + e.what());
    }
    if (!(f.grid == grid))
      fail("\"seed.path\": field grid does not match the run grid");
    for (auto& p : plans) p.seed = FieldSeed{f};
  } else {
    fail("\"seed.type\" must be \"gaussian\" or \"file\"");
  }
}

void default_save_lists(std::vector<SweepPlan>& plans,
                        const OutputSpec& output) {
  for (auto& p : plans) {
    if (output.save_fields_at)
      p.save_fields_at = *output.save_fields_at;
    else if (p.save_fields_at.empty() && !p.lambdas.empty())
      p.save_fields_at = {p.lambdas.front(), p.lambdas.back()};
  }
}

}  // namespace

RunConfig preset_config(std::string_view name) {
  const Preset* p = find_preset(name);
  if (!p) fail("unknown preset \"" + std::string(name) + "\"");
  RunConfig rc;
  rc.preset_name = p->name;
  rc.model = p->model;
  rc.grid = p->grid;
  rc.solver = p->solver;
  rc.paths = p->paths;
  return rc;
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("top level must be a JSON object");

  if (root.contains("preset")) {
    check_keys(root, "", {"preset", "solver", "output"});
    RunConfig rc = preset_config(require_str(root, "", "preset"));
    if (root.contains("solver"))
      rc.solver = parse_solver(require_obj(root, "", "solver"), rc.solver);
    if (root.contains("output"))
      rc.output = parse_output(require_obj(root, "", "output"), rc.output);
    if (rc.output.save_fields_at)
      for (auto& p : rc.paths) p.save_fields_at = *rc.output.save_fields_at;
    return rc;
  }

  std::string missing;
  for (const char* k : {"model", "grid", "seed"})
    if (!root.contains(k)) missing += std::string(missing.empty() ? "" : ", ") + "\"" + k + "\"";
  if (!root.contains("path") && !root.contains("paths"))
    missing += std::string(missing.empty() ? "" : ", ") + "\"path\" (or \"paths\")";
  if (!missing.empty())
    fail("missing required keys: " + missing +
         " (or use {\"preset\": <name>})");

  check_keys(root, "", {"model", "grid", "solver", "path", "paths", "seed", "output"});
  if (root.contains("path") && root.contains("paths"))
    fail("give either \"path\" or \"paths\", not both");

  RunConfig rc;
  rc.model = parse_model(require_obj(root, "", "model"));
  rc.grid = parse_grid(require_obj(root, "", "grid"));
  if (root.contains("solver"))
    rc.solver = parse_solver(require_obj(root, "", "solver"), NewtonOptions{});
  if (root.contains("output"))
    rc.output = parse_output(require_obj(root, "", "output"), OutputSpec{});

  if (root.contains("path")) {
    rc.paths.push_back(parse_path_entry(require_obj(root, "", "path"), "path"));
  } else {
    const json& arr = root.at("paths");
    if (!arr.is_array() || arr.empty())
      fail("\"paths\" must be a non-empty array");
    int i = 0;
    for (const json& e : arr) {
      if (!e.is_object()) fail("\"paths\" entries must be objects");
      rc.paths.push_back(parse_path_entry(e, "paths[" + std::to_string(i) + "]"));
      ++i;
    }
  }

  apply_seed(require_obj(root, "", "seed"), rc.grid, rc.paths);
  default_save_lists(rc.paths, rc.output);
  return rc;
}

nlohmann::json model_to_json(const Model& m) {
  nlohmann::json j;
  j["kind"] = model_kind_name(m);
  j["kinetic_factor"] = m.kinetic_factor;
  if (const auto* k = std::get_if<KerrModel>(&m.kind)) {
    j["V0"] = k->V0;
    j["sigma"] = k->sigma;
  } else if (const auto* s = std::get_if<SaturableModel>(&m.kind)) {
    j["V0"] = s->V0;
    j["A"] = s->A;
  }
  return j;
}

}  // namespace gapsol
