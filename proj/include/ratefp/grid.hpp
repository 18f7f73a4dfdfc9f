#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "ratefp/errors.hpp"

namespace ratefp {

// Uniform cell-centered 1D grid on [lo, hi].
struct Grid1 {
  int n = 0;
  double lo = 0.0, hi = 0.0;

  double h() const { return (hi - lo) / n; }
  double center(int i) const { return lo + (i + 0.5) * h(); }
  // index of the cell containing x, clamped to [0, n-1]
  int cell_of(double x) const {
    int i = static_cast<int>(std::floor((x - lo) / h()));
    if (i < 0) i = 0;
    if (i >= n) i = n - 1;
    return i;
  }
};

// Uniform cell-centered grid on [lo1, hi1] x [lo2, hi2]; values stored row
// major with nu1 as the slow index: idx = i * n2 + j.
struct Grid2 {
  int n1 = 0, n2 = 0;
  double lo1 = 0.0, hi1 = 0.0, lo2 = 0.0, hi2 = 0.0;

  double h1() const { return (hi1 - lo1) / n1; }
  double h2() const { return (hi2 - lo2) / n2; }
  double cell_area() const { return h1() * h2(); }
  double center1(int i) const { return lo1 + (i + 0.5) * h1(); }
  double center2(int j) const { return lo2 + (j + 0.5) * h2(); }
  std::size_t size() const { return static_cast<std::size_t>(n1) * n2; }

  static Grid2 square(int n, double nu_max) { return {n, n, 0.0, nu_max, 0.0, nu_max}; }
};

struct DensityGrid1 {
  Grid1 grid;
  std::vector<double> values;  // cell-averaged density
  double time = 0.0;

  double mass() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * grid.h();
  }
  void normalize() {
    const double m = mass();
    if (!(m > 0.0)) throw DegenerateMass("density has no positive mass");
    for (double& v : values) v /= m;
  }
  double min_value() const {
    double m = values.empty() ? 0.0 : values[0];
    for (double v : values) m = std::min(m, v);
    return m;
  }
};

struct DensityGrid2 {
  Grid2 grid;
  std::vector<double> values;
  double time = 0.0;

  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * grid.n2 + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.n2 + j]; }

  double mass() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * grid.cell_area();
  }
  void normalize() {
    const double m = mass();
    if (!(m > 0.0)) throw DegenerateMass("density has no positive mass");
    for (double& v : values) v /= m;
  }
  double min_value() const {
    double m = values.empty() ? 0.0 : values[0];
    for (double v : values) m = std::min(m, v);
    return m;
  }
};

inline double l1_distance(const DensityGrid1& a, const DensityGrid1& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += std::abs(a.values[i] - b.values[i]);
  return s * a.grid.h();
}

inline double l1_distance(const DensityGrid2& a, const DensityGrid2& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += std::abs(a.values[i] - b.values[i]);
  return s * a.grid.cell_area();
}

}  // namespace ratefp
