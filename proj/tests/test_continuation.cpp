#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "gapsol/continuation.hpp"
#include "oracles.hpp"

using namespace gapsol;
using doctest::Approx;

namespace {

Model cubic_model() {
  // N = -u^3, kinetic 1: the soliton family u = sqrt(-lambda) sech(sqrt(-lambda) x)
  // with power 2 sqrt(-lambda).
  return make_kerr(0.0, +1, 1.0);
}

}  // namespace

TEST_CASE("gaussian seeds hit the requested power exactly") {
  Grid g = build_grid(2, 192, 32.0, true);
  for (double target : {4.0, 0.4, 2.0}) {
    Field s = gaussian_seed(g, 1.0, target);
    CHECK(power(s) == Approx(target).epsilon(1e-12));
    // Peak sits at the box center.
    const std::size_t center = g.ravel({g.n / 2, g.n / 2, 0});
    CHECK(inf_norm(s) == s.values[center]);
  }
  // Quadratic functional: doubling the amplitude quadruples the power.
  Field s = gaussian_seed(g, 1.0, 1.0);
  Field s2 = s;
  scale(s2, 2.0);
  CHECK(power(s2) == Approx(4.0 * power(s)).epsilon(1e-13));

  CHECK_THROWS_AS(gaussian_seed(g, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_seed(g, 1.0, -2.0), std::invalid_argument);
}

TEST_CASE("lambda_range lands exactly on the endpoint") {
  auto up = lambda_range(0.0, 11.7498, 0.25);
  CHECK(up.front() == 0.0);
  CHECK(up.back() == 11.7498);
  for (std::size_t i = 1; i < up.size(); ++i) {
    CHECK(up[i] > up[i - 1]);
    CHECK(up[i] - up[i - 1] <= 0.25 + 1e-12);
  }

  auto down = lambda_range(16.0, 15.125, 0.125);
  CHECK(down.front() == 16.0);
  CHECK(down.back() == 15.125);
  CHECK(down.size() == 8);  // 7 steps of exactly 0.125

  auto single = lambda_range(2.0, 2.0, 0.1);
  CHECK(single == std::vector<double>{2.0});

  CHECK_THROWS_AS(lambda_range(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("a single-lambda plan is exactly one newton solve") {
  Grid g = build_grid(1, 256, 40.0, true);
  Model m = cubic_model();
  Field seed(g);
  fill_from_coords(seed, [](const double* x) {
    return 1.5 * std::exp(-x[0] * x[0] / 2.0);
  });

  SweepPlan plan;
  plan.lambdas = {-1.0};
  plan.seed = FieldSeed{seed};
  CurveResult res = sweep(m, g, plan, {});
  REQUIRE(res.completed);
  REQUIRE(res.records.size() == 1);

  auto [u, rep] = newton_solve(m, -1.0, seed, {});
  CHECK(res.records[0].power == rep.final_power);
  CHECK(res.records[0].newton_iters == rep.newton_iters);
  REQUIRE(res.final_field.has_value());
  CHECK(std::memcmp(res.final_field->data(), u.data(),
                    u.size() * sizeof(double)) == 0);
}

TEST_CASE("warm-started path follows the cubic soliton family") {
  Grid g = build_grid(1, 256, 40.0, true);
  Model m = cubic_model();
  SweepPlan plan;
  plan.lambdas = lambda_range(-1.0, -2.0, 0.25);
  plan.seed = GaussianSeed{1.0, 2.0};
  plan.label = "down";
  plan.save_fields_at = {-1.0, -2.0};
  CurveResult res = sweep(m, g, plan, {});
  REQUIRE(res.completed);
  CHECK(res.records.size() == 5);
  for (const CurveRecord& rec : res.records) {
    CHECK(rec.converged);
    // Soliton family u = sqrt(-2 lambda) sech(sqrt(-lambda) x) has power
    // 4 sqrt(-lambda) (up to box truncation).
    CHECK(rec.power == Approx(4.0 * std::sqrt(-rec.lambda)).epsilon(1e-3));
  }
  // Warm starts keep the newton effort small after the first point.
  for (std::size_t i = 1; i < res.records.size(); ++i)
    CHECK(res.records[i].newton_iters <= 6);
  CHECK(res.saved_fields.size() == 2);
  CHECK(res.saved_fields[0].first == -1.0);
  CHECK(res.saved_fields[1].first == -2.0);
}

TEST_CASE("path failure stops the sweep and keeps the last good state") {
  Grid g = build_grid(1, 256, 40.0, true);
  Model m = cubic_model();
  // Seed with the exact solution at the first lambda so a one-iteration
  // budget converges there (0 steps) but cannot absorb the 0.5 jump.
  auto [u_star, rep0] = newton_solve(m, -1.0, gaussian_seed(g, 1.0, 4.0), {});
  REQUIRE(rep0.converged);
  SweepPlan plan;
  plan.lambdas = {-1.0, -1.5, -2.0};
  plan.seed = FieldSeed{u_star};
  NewtonOptions opts;
  opts.max_newton = 1;
  CurveResult res = sweep(m, g, plan, opts);
  CHECK_FALSE(res.completed);
  REQUIRE(res.records.size() == 2);  // the third lambda is never attempted
  CHECK(res.records[0].converged);
  CHECK(res.records[0].newton_iters == 0);
  CHECK_FALSE(res.records[1].converged);
  REQUIRE(res.final_field.has_value());
  CHECK(power(*res.final_field) == Approx(res.records[0].power));
}

TEST_CASE("first-point failure yields an all-failed path") {
  Grid g = build_grid(1, 128, 30.0, true);
  Model m = cubic_model();
  SweepPlan plan;
  plan.lambdas = {-1.0};
  plan.seed = GaussianSeed{1.0, 2.0};
  NewtonOptions opts;
  opts.max_newton = 0;
  CurveResult res = sweep(m, g, plan, opts);
  CHECK_FALSE(res.completed);
  CHECK_FALSE(res.records[0].converged);
  CHECK_FALSE(res.final_field.has_value());
}

TEST_CASE("plan validation") {
  Grid g = build_grid(1, 64, 10.0, true);
  Model m = cubic_model();
  SweepPlan plan;
  plan.lambdas = {};
  CHECK_THROWS_AS(sweep(m, g, plan, {}), std::invalid_argument);
  plan.lambdas = {-1.0, -0.5, -0.7};
  CHECK_THROWS_AS(sweep(m, g, plan, {}), std::invalid_argument);
  plan.lambdas = {-1.0};
  plan.seed = FieldSeed{Field(build_grid(1, 32, 10.0, true), 1.0)};
  CHECK_THROWS_AS(sweep(m, g, plan, {}), std::invalid_argument);
}

TEST_CASE("repeated sweeps are bit-identical") {
  Grid g = build_grid(1, 128, 30.0, true);
  Model m = cubic_model();
  SweepPlan plan;
  plan.lambdas = lambda_range(-1.0, -1.5, 0.25);
  plan.seed = GaussianSeed{1.0, 2.0};
  plan.save_fields_at = {-1.5};
  CurveResult a = sweep(m, g, plan, {});
  CurveResult b = sweep(m, g, plan, {});
  REQUIRE(a.completed);
  REQUIRE(b.completed);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].lambda == b.records[i].lambda);
    CHECK(a.records[i].power == b.records[i].power);
    CHECK(a.records[i].newton_iters == b.records[i].newton_iters);
    CHECK(a.records[i].mean_gmres_iters == b.records[i].mean_gmres_iters);
  }
  REQUIRE(a.final_field.has_value());
  CHECK(std::memcmp(a.final_field->data(), b.final_field->data(),
                    a.final_field->size() * sizeof(double)) == 0);
  CHECK(std::memcmp(a.saved_fields[0].second.data(),
                    b.saved_fields[0].second.data(),
                    a.saved_fields[0].second.size() * sizeof(double)) == 0);
}

TEST_CASE("presets carry the experiment configurations") {
  CHECK(presets().size() == 6);
  const Preset* kf = find_preset("kerr-focusing");
  REQUIRE(kf);
  CHECK(kf->grid.n == 192);
  CHECK(kf->grid.box_len == 32.0);
  CHECK(kf->grid.dim == 2);
  REQUIRE(kf->paths.size() == 1);
  CHECK(kf->paths[0].lambdas.front() == 0.0);
  CHECK(kf->paths[0].lambdas.back() == 11.7498);
  const auto* seed = std::get_if<GaussianSeed>(&kf->paths[0].seed);
  REQUIRE(seed);
  CHECK(seed->target_power == 4.0);

  const Preset* kd = find_preset("kerr-defocusing");
  REQUIRE(kd);
  CHECK(kd->grid.n == 384);
  CHECK(kd->grid.box_len == 64.0);
  REQUIRE(kd->paths.size() == 2);
  CHECK(kd->paths[0].lambdas.front() == 16.0);
  CHECK(kd->paths[0].lambdas.back() == 15.125);
  CHECK(kd->paths[1].lambdas.back() == 17.5);

  const Preset* sf = find_preset("saturable-focusing");
  REQUIRE(sf);
  CHECK(std::get_if<GaussianSeed>(&sf->paths[0].seed)->target_power == 2.0);
  CHECK(sf->paths[0].lambdas.front() == 14.0);
  CHECK(sf->paths[0].lambdas.back() == 27.3438);

  const Preset* sd = find_preset("saturable-defocusing");
  REQUIRE(sd);
  CHECK(std::get_if<GaussianSeed>(&sd->paths[0].seed)->target_power == 0.4);
  CHECK(sd->paths[0].lambdas.back() == -24.5);
  CHECK(sd->paths[1].lambdas.back() == -23.4);

  CHECK(find_preset("kerr-defocusing-half"));
  CHECK(find_preset("saturable-defocusing-half"));
  CHECK(find_preset("nope") == nullptr);

  // Every lambda step in every preset respects the |dl| <= 0.25 bound.
  for (const Preset& p : presets())
    for (const SweepPlan& plan : p.paths)
      for (std::size_t i = 1; i < plan.lambdas.size(); ++i)
        CHECK(std::abs(plan.lambdas[i] - plan.lambdas[i - 1]) <= 0.25 + 1e-12);
}
