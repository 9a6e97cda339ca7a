#pragma once

#include <functional>
#include <string>
#include <variant>

#include "gapsol/grid.hpp"

namespace gapsol {

// Cubic (Kerr) nonlinearity on a square lattice of period 1:
//   V(x) = (V0/2) * sum_i sin^2(pi x_i),   N(x,u) = -sigma u^3.
struct KerrModel {
  double V0 = 0.0;
  int sigma = +1;  // +1 focusing, -1 defocusing
};

// Saturable nonlinearity; the whole potential action lives in N:
//   N(x,u) = V0 u / (1 + A^2 prod_i cos^2(pi x_i) + u^2),   V = 0.
struct SaturableModel {
  double V0 = 0.0;
  double A = 1.0;
};

// User-supplied pointwise model. Callbacks receive a pointer to dim
// coordinates. potential may be empty (treated as zero).
struct CustomModel {
  std::function<double(const double*)> potential;
  std::function<double(const double*, double)> nonlinear;     // N(x,u)
  std::function<double(const double*, double)> nonlinear_du;  // dN/du
};

struct Model {
  std::variant<KerrModel, SaturableModel, CustomModel> kind;
  double kinetic_factor = 0.5;  // coefficient on -Laplace
};

Model make_kerr(double V0, int sigma, double kinetic = 0.5);
Model make_saturable(double V0, double A, double kinetic = 0.5);
Model make_custom(std::function<double(const double*)> potential,
                  std::function<double(const double*, double)> nonlinear,
                  std::function<double(const double*, double)> nonlinear_du,
                  double kinetic = 1.0);

std::string model_kind_name(const Model& m);

// V(x) u + N(x, u), the non-Laplacian non-eigenvalue part of the operator.
Field nonlinear_apply(const Model& m, const Field& u);

// L_u = V + dN/du evaluated at u.
Field linearization(const Model& m, const Field& u);

// kinetic*(-Laplace u) + V u + N(x,u) - lambda u.
Field residual(const Model& m, const Field& u, double lambda);

// Frozen linearization kinetic*(-Laplace) + L_u - lambda.
struct LinearizedOperator {
  Grid grid;
  double kinetic = 1.0;
  double lambda = 0.0;
  Field Lu;
  double l = 0.0;  // mean of Lu

  Field apply(const Field& v) const;
};

LinearizedOperator make_linearized(const Model& m, const Field& u, double lambda);

}  // namespace gapsol
