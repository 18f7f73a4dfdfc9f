#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ratefp/grid.hpp"

namespace ratefp {

// Reduced scalar dynamics tabulated on uniform nodes: drift g(y) and its
// potential G(y) = -int g dy anchored at the mid node.  Node i sits at the
// center of DensityGrid1 cell i, so the finite-volume solver, the stationary
// density exp(-2G/beta^2) and quadratures all share one grid.
struct ReducedModel {
  Grid1 ygrid;            // cells centered on the nodes
  std::vector<double> g;  // drift at nodes
  std::vector<double> G;  // potential at nodes, G(anchor) = 0

  double y_min() const { return ygrid.center(0); }
  double y_max() const { return ygrid.center(ygrid.n - 1); }
  int nearest_node(double y) const;
};

// Tabulate from a callable drift; G by cumulative trapezoid from the middle
// node outward (n must be odd so y = 0.5*(lo+hi) is a node).
ReducedModel tabulate_reduced_model(const std::function<double(double)>& g, double y_half_width,
                                    int n_nodes, double y_center = 0.0);

// Monotone (Fritsch-Carlson) cubic interpolant of the tabulated drift.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(const std::vector<double>& x, const std::vector<double>& y);
  double operator()(double x) const;
  double derivative(double x) const;

 private:
  std::vector<double> x_, y_, d_;  // nodes, values, node derivatives
  double h_ = 1.0;
};

// Backward-Euler Chang-Cooper (exponentially fitted flux) step; tridiagonal
// solve, unconditionally positive, conservative.  Factors cached per dt.
class Fp1dSolver {
 public:
  Fp1dSolver(const ReducedModel& model, double beta, double dt);
  void step(DensityGrid1& q) const;
  double dt() const { return dt_; }

 private:
  double dt_ = 0.0;
  std::vector<double> sub_, diag_, sup_;  // tridiagonal factors
  mutable std::vector<double> work_a_, work_b_;
};

void fp1d_step(DensityGrid1& q, const ReducedModel& model, double beta, double dt);

// Integrate to t_end with fixed dt; optional per-snapshot callback.
DensityGrid1 solve_fp1d(const DensityGrid1& q0, const ReducedModel& model, double beta,
                        double t_end, double dt,
                        const std::function<void(const DensityGrid1&)>& on_snapshot = {},
                        double snapshot_every = 0.0);

// Stationary density exp(-2 G / beta^2), max-shifted before exponentiation,
// normalized to unit mass.  Throws DegenerateMass when everything underflows.
DensityGrid1 steady_state(const ReducedModel& model, double beta);

struct WellPartition {
  std::vector<double> minima;   // well bottoms, ascending in y
  std::vector<double> maxima;   // interior barriers, ascending in y
  // label of well k for reporting: "left"/"middle"/"right" for three wells,
  // "left"/"right" for two
  std::string label(int well) const;
  int n_wells() const { return static_cast<int>(minima.size()); }
  // basin of well k: [lower, upper] bounded by adjacent barriers or domain
  std::pair<double, double> basin(int well, double y_lo, double y_hi) const;
};

// Interior extrema of G located by sign changes of g (G' = -g).
WellPartition partition_wells(const ReducedModel& model);

struct MfptResult {
  double mean = 0.0;     // exact double-quadrature value
  double kramers = 0.0;  // curvature asymptotic; NaN when not applicable
};

// Mean first passage time from `start` to `absorb` with reflection at
// `reflect` (must be on the far side of start).  Log-domain trapezoid
// quadrature of the classical nested-integral formula.
MfptResult mean_first_passage_time(const ReducedModel& model, double beta, double start,
                                   double absorb, double reflect);

// Steady-state probability mass in the basin of the given well.
double performance(const ReducedModel& model, double beta, const WellPartition& wells,
                   int correct_well);

// Finite-time variant: mass of `q` inside the basin of the given well.
double well_mass(const DensityGrid1& q, const WellPartition& wells, int well);

}  // namespace ratefp
