#pragma once

#include <vector>

#include "ratefp/fp1d.hpp"
#include "ratefp/model.hpp"

namespace ratefp {

// Local coordinates (x, y) at a linearization point: x along the strongly
// contracting eigendirection, y along the slow one.  Columns of `inverse`
// are the unit eigenvectors, so state = base + inverse * (x, y) and
// (x, y) = matrix * (state - base).  Eigenvectors need not be orthogonal;
// matrix * inverse = I holds to roundoff and the conditioning is reported.
struct SlowFastFrame {
  Point2 base;
  Mat2 matrix;   // rows: fast coordinate, slow coordinate
  Mat2 inverse;  // columns: fast direction, slow direction
  double eig_fast = 0.0;
  double eig_slow = 0.0;
  double epsilon = 0.0;  // |eig_slow| / |eig_fast|
  bool epsilon_warning = false;  // true when epsilon >= 0.3
  double condition = 1.0;        // 2-norm condition estimate of `inverse`

  Point2 fast_direction() const { return inverse.col(0); }
  Point2 slow_direction() const { return inverse.col(1); }
  Point2 to_state(double x, double y) const { return base + inverse * Point2{x, y}; }
  double slow_coordinate(Point2 state) const { return dot(matrix.row(1), state - base); }
  double fast_coordinate(Point2 state) const { return dot(matrix.row(0), state - base); }
};

// Frame from the Jacobian eigen-structure at `base`.  Throws
// ComplexEigenvalues when the local spectrum is oscillatory.
SlowFastFrame build_frame(const VectorField2& field, Point2 base);

// Frame at the central saddle of the model field (its continuation under
// bias).  Throws NoSaddle when the equilibrium set has none.
SlowFastFrame build_frame(const ModelParams& params, int grid_n = 128);

struct ManifoldOptions {
  int n_nodes = 1201;      // nodes across [-y_max, y_max], forced odd
  double y_max = 0.0;      // 0 = auto: equilibrium images within 0.8*y_max
  double root_tol = 1e-12; // Newton stop on |f|
  double assert_tol = 1e-10;
  double x_window = 10.0;  // bracket search half-width around the last root
  int scan_points = 96;    // bracket scan resolution for multi-root detection
};

// Fast nullcline x*(y), reduced drift g(x*(y), y) and tabulated potential
// G(y), continued node by node from the base point.
struct SlowManifold {
  SlowFastFrame frame;
  std::vector<double> x_star;   // per node
  ReducedModel reduced;         // y grid, g_red, G
  bool multiple_roots = false;  // bracket scan saw >1 root somewhere
  double max_residual = 0.0;    // max |f(x*, y)| over nodes
};

// f(x, y) = fast-row . F(base + inverse * (x, y)); df/dx from the Jacobian.
double fast_component(const SlowFastFrame& frame, const VectorField2& field, double x, double y);

SlowManifold build_manifold(const VectorField2& field, const SlowFastFrame& frame,
                            const std::vector<Equilibrium>& equilibria,
                            const ManifoldOptions& opts = {});

// Full pipeline: equilibria -> saddle frame -> nullcline -> drift -> potential.
SlowManifold build_manifold(const ModelParams& params, const ManifoldOptions& opts = {});

}  // namespace ratefp
