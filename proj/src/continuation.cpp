#include "gapsol/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gapsol {

std::vector<double> lambda_range(double start, double end, double step) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw std::invalid_argument("lambda_range: step must be positive");
  if (start == end) return {start};
  const double dir = end > start ? 1.0 : -1.0;
  const double slack = 1e-12 * std::max(1.0, std::abs(end));
  std::vector<double> out{start};
  for (int k = 1;; ++k) {
    const double v = start + dir * step * k;
    if (dir * (v - end) >= -slack) break;
    out.push_back(v);
  }
  out.push_back(end);
  return out;
}

Field gaussian_seed(const Grid& g, double sigma, double target_power) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_seed: sigma must be positive");
  if (!(target_power > 0.0))
    throw std::invalid_argument("gaussian_seed: target_power must be positive");
  const double center = g.origin + g.box_len / 2.0;
  Field u(g);
  fill_from_coords(u, [&](const double* x) {
    double r2 = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      const double d = x[a] - center;
      r2 += d * d;
    }
    return std::exp(-r2 / (2.0 * sigma * sigma));
  });
  const double p0 = power(u);
  scale(u, std::sqrt(target_power / p0));
  return u;
}

namespace {

void validate_plan(const SweepPlan& plan) {
  if (plan.lambdas.empty())
    throw std::invalid_argument("sweep: empty lambda path");
  for (std::size_t i = 1; i < plan.lambdas.size(); ++i) {
    const double d = plan.lambdas[i] - plan.lambdas[i - 1];
    const double d0 = plan.lambdas[1] - plan.lambdas[0];
    if (d == 0.0 || (d > 0.0) != (d0 > 0.0))
      throw std::invalid_argument("sweep: lambda path must be strictly monotone");
  }
}

bool lambda_matches(double lam, const std::vector<double>& wanted) {
  for (double s : wanted)
    if (std::abs(lam - s) <= 1e-12 * std::max(1.0, std::abs(s))) return true;
  return false;
}

double mean_gmres(const NewtonReport& rep) {
  if (rep.gmres_iters_per_step.empty()) return 0.0;
  double s = 0.0;
  for (int it : rep.gmres_iters_per_step) s += it;
  return s / static_cast<double>(rep.gmres_iters_per_step.size());
}

}  // namespace

CurveResult sweep(const Model& m, const Grid& g, const SweepPlan& plan,
                  const NewtonOptions& opts, const SweepProgress& progress) {
  validate_plan(plan);

  Field u;
  if (const auto* gs = std::get_if<GaussianSeed>(&plan.seed)) {
    u = gaussian_seed(g, gs->sigma, gs->target_power);
  } else {
    u = std::get<FieldSeed>(plan.seed).field;
    if (!(u.grid == g))
      throw std::invalid_argument("sweep: seed field grid does not match run grid");
  }

  CurveResult result;
  result.label = plan.label;
  bool all_ok = true;
  for (double lam : plan.lambdas) {
    auto [u_new, rep] = newton_solve(m, lam, u, opts);
    CurveRecord rec{lam, rep.final_power, rep.newton_iters, mean_gmres(rep),
                    rep.converged};
    result.records.push_back(rec);
    if (progress) progress(rec);
    if (!rep.converged) {
      all_ok = false;
      break;
    }
    u = std::move(u_new);
    if (lambda_matches(lam, plan.save_fields_at))
      result.saved_fields.emplace_back(lam, u);
    result.final_field = u;
  }
  result.completed = all_ok && result.records.size() == plan.lambdas.size();
  return result;
}

namespace {

SweepPlan make_plan(std::vector<double> lambdas, double seed_sigma,
                    double seed_power, std::string label,
                    std::vector<double> save_at) {
  SweepPlan plan;
  plan.lambdas = std::move(lambdas);
  plan.seed = GaussianSeed{seed_sigma, seed_power};
  plan.label = std::move(label);
  plan.save_fields_at = std::move(save_at);
  return plan;
}

std::vector<Preset> make_presets() {
  std::vector<Preset> ps;

  {
    Preset p;
    p.name = "kerr-focusing";
    p.description =
        "Kerr focusing, V0=28.8 on [-16,16]^2 (192^2); single path "
        "lambda 0 -> 11.7498, Gaussian seed with power 4";
    p.model = make_kerr(28.8, +1);
    p.grid = build_grid(2, 192, 32.0, true);
    p.paths = {make_plan(lambda_range(0.0, 11.7498, 0.25), 0.5, 4.0, "up",
                         {0.0, 11.7498})};
    ps.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "kerr-defocusing";
    p.description =
        "Kerr defocusing, V0=21.6 on [-32,32]^2 (384^2); two paths from "
        "lambda 16 down to 15.125 and up to 17.5, Gaussian seeds with power 4";
    p.model = make_kerr(21.6, -1);
    p.grid = build_grid(2, 384, 64.0, true);
    p.paths = {
        make_plan(lambda_range(16.0, 15.125, 0.125), 0.5, 4.0, "down", {15.125}),
        make_plan(lambda_range(16.0, 17.5, 0.25), 0.5, 4.0, "up", {17.5})};
    ps.push_back(std::move(p));
  }
  {
    Preset p = *std::find_if(ps.begin(), ps.end(), [](const Preset& q) {
      return q.name == "kerr-defocusing";
    });
    p.name = "kerr-defocusing-half";
    p.description =
        "Kerr defocusing at half resolution, [-16,16]^2 (192^2); same paths";
    p.grid = build_grid(2, 192, 32.0, true);
    ps.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "saturable-focusing";
    p.description =
        "Saturable focusing, V0=36.3, A=1 on [-16,16]^2 (192^2); single "
        "path lambda 14 -> 27.3438, Gaussian seed with power 2";
    p.model = make_saturable(36.3, 1.0);
    p.grid = build_grid(2, 192, 32.0, true);
    p.paths = {make_plan(lambda_range(14.0, 27.3438, 0.25), 0.5, 2.0, "up",
                         {14.0, 27.3438})};
    ps.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "saturable-defocusing";
    p.description =
        "Saturable defocusing, V0=-36.3, A=1 on [-32,32]^2 (384^2); two "
        "paths from lambda -24 down to -24.5 and up to -23.4, Gaussian "
        "seeds with power 0.4";
    p.model = make_saturable(-36.3, 1.0);
    p.grid = build_grid(2, 384, 64.0, true);
    p.paths = {make_plan(lambda_range(-24.0, -24.5, 0.0625), 0.5, 0.4, "down",
                         {-24.5}),
               make_plan(lambda_range(-24.0, -23.4, 0.1), 0.5, 0.4, "up",
                         {-23.4})};
    ps.push_back(std::move(p));
  }
  {
    Preset p = *std::find_if(ps.begin(), ps.end(), [](const Preset& q) {
      return q.name == "saturable-defocusing";
    });
    p.name = "saturable-defocusing-half";
    p.description =
        "Saturable defocusing at half resolution, [-16,16]^2 (192^2); same paths";
    p.grid = build_grid(2, 192, 32.0, true);
    ps.push_back(std::move(p));
  }
  return ps;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> ps = make_presets();
  return ps;
}

const Preset* find_preset(std::string_view name) {
  for (const Preset& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace gapsol
