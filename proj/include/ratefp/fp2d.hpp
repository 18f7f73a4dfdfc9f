#pragma once

#include <functional>
#include <vector>

#include "ratefp/fp1d.hpp"
#include "ratefp/grid.hpp"
#include "ratefp/model.hpp"

namespace ratefp {

enum class Fp2dScheme {
  explicit_euler,  // forward Euler flux update, CFL-limited, for validation
  implicit,        // Strang-split backward-Euler sweeps, unconditionally stable
};

// Mass-conserving finite-volume solver for
//   dp/dt + div(F p - (beta^2/2) grad p) = 0
// on [0, nu_max]^2 with zero total flux through every boundary face.
// Fluxes use exponential fitting (Bernoulli weights), so cell-to-cell ratios
// reproduce the local Gibbs factor and positivity is structural.  The
// implicit path alternates the sweep order (X-Y-X then Y-X-Y) to cancel the
// leading splitting asymmetry.
class Fp2dSolver {
 public:
  Fp2dSolver(const Grid2& grid, const VectorField2& field, double beta, double dt,
             Fp2dScheme scheme = Fp2dScheme::implicit);

  void step(DensityGrid2& p);
  double dt() const { return dt_; }
  // largest dt for which the explicit update keeps all cells nonnegative
  double explicit_dt_limit() const;
  const Grid2& grid() const { return grid_; }

 private:
  struct SweepFactors {
    // tridiagonal factors for every line of one direction, length n per line
    std::vector<double> sub, diag, sup;
  };
  SweepFactors make_factors(bool along_axis1, double dt) const;
  void sweep(DensityGrid2& p, const SweepFactors& f, bool along_axis1) const;
  void explicit_step(DensityGrid2& p) const;

  Grid2 grid_;
  double beta_ = 0.0, dt_ = 0.0;
  Fp2dScheme scheme_;
  // face drifts: f1_ has (n1+1) x n2 entries, f2_ has n1 x (n2+1)
  std::vector<double> f1_, f2_;
  SweepFactors x_half_, x_full_, y_half_, y_full_;
  long parity_ = 0;
  mutable std::vector<double> line_a_, line_b_, line_q_;
};

DensityGrid2 gaussian_density2(const Grid2& grid, Point2 center, double sd);

// Integrate to t_end; optional snapshot callback every `snapshot_every` time
// units.  Checks mass conservation and positivity after every step.
DensityGrid2 solve_fp2d(const DensityGrid2& p0, const VectorField2& field, double beta,
                        double t_end, double dt, Fp2dScheme scheme = Fp2dScheme::implicit,
                        const std::function<void(const DensityGrid2&)>& on_snapshot = {},
                        double snapshot_every = 0.0);

// One step of the chosen scheme (convenience wrapper; factors are rebuilt).
void fp2d_step(DensityGrid2& p, const VectorField2& field, double beta, double dt,
               Fp2dScheme scheme = Fp2dScheme::implicit);

// Line-integrate along the other axis; axis = 0 keeps nu1, 1 keeps nu2.
DensityGrid1 marginal(const DensityGrid2& p, int axis);

// Density of y = slow_row . (state - base): every cell's mass is spread
// uniformly over the projected span of the cell, clipped to the target grid.
DensityGrid1 project_onto_direction(const DensityGrid2& p, Point2 base, Point2 slow_row,
                                    const Grid1& ygrid);

struct DensityMode {
  int i = 0, j = 0;
  double value = 0.0;
  double prominence = 0.0;
};

// Interior maxima with topographic prominence at least prominence_frac of
// the global maximum; sub-cell ripples along a ridge merge into one mode.
std::vector<DensityMode> density_modes(const DensityGrid2& p, double prominence_frac = 0.02);

}  // namespace ratefp
