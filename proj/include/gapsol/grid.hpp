#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace gapsol {

// Uniform periodic box [origin, origin + box_len)^dim with n points per
// side; grid point j has coordinate origin + j*h in each dimension.
struct Grid {
  int dim = 1;
  int n = 0;
  double box_len = 1.0;
  double h = 0.0;
  double origin = 0.0;

  std::size_t num_points() const;
  double coord(int j) const { return origin + j * h; }
  double volume() const;
  double cell_volume() const;  // h^dim

  // Row-major decomposition of a linear index into per-axis indices.
  std::array<int, 3> unravel(std::size_t idx) const;
  std::size_t ravel(const std::array<int, 3>& j) const;

  bool operator==(const Grid&) const = default;
};

Grid build_grid(int dim, int n, double box_len, bool centered);

// Real-valued grid function, stored row-major over the index set.
struct Field {
  Grid grid;
  std::vector<double> values;

  Field() = default;
  explicit Field(const Grid& g);
  Field(const Grid& g, double fill);

  std::size_t size() const { return values.size(); }
  double* data() { return values.data(); }
  const double* data() const { return values.data(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

void require_same_grid(const Field& a, const Field& b);
void require_finite(const Field& f, const char* what);
bool all_finite(const Field& f);

double inf_norm(const Field& f);
// Plain sum_j a_j * b_j (no mesh weight).
double dot(const Field& a, const Field& b);
// L2 inner product h^d * sum_j a_j b_j.
double inner(const Field& a, const Field& b);
double norm2(const Field& f);  // sqrt(inner(f, f))

// y += alpha * x
void axpy(double alpha, const Field& x, Field& y);
void scale(Field& f, double alpha);

// Fill from a pointwise function of the coordinates. Fn receives a pointer
// to grid.dim coordinates.
template <typename Fn>
void fill_from_coords(Field& f, Fn&& fn) {
  const Grid& g = f.grid;
  const std::size_t total = g.num_points();
  std::array<int, 3> j{0, 0, 0};
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (std::size_t idx = 0; idx < total; ++idx) {
    j = g.unravel(idx);
    for (int a = 0; a < g.dim; ++a) x[a] = g.coord(j[a]);
    f.values[idx] = fn(x.data());
  }
}

}  // namespace gapsol
