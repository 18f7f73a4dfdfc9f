#include "ratefp/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ratefp/errors.hpp"

namespace ratefp {

SlowFastFrame build_frame(const VectorField2& field, Point2 base) {
  const Mat2 j = field.jacobian(base);
  const EigenReal2 eg = eigen2(j);
  if (eg.complex_pair)
    throw ComplexEigenvalues("Jacobian eigenvalues are a complex pair; no slow-fast split");

  SlowFastFrame f;
  f.base = base;
  f.eig_fast = eg.lambda1;  // larger magnitude
  f.eig_slow = eg.lambda2;
  if (eg.lambda1 == 0.0) throw ComplexEigenvalues("degenerate zero fast eigenvalue");
  f.epsilon = std::abs(eg.lambda2) / std::abs(eg.lambda1);
  f.epsilon_warning = f.epsilon >= 0.3;

  Point2 fast = eg.v1, slow = eg.v2;
  // fix sign: positive nu1 component
  if (slow.nu1 < 0.0 || (slow.nu1 == 0.0 && slow.nu2 < 0.0)) slow = -1.0 * slow;
  if (fast.nu1 < 0.0 || (fast.nu1 == 0.0 && fast.nu2 < 0.0)) fast = -1.0 * fast;
  f.inverse = Mat2::from_cols(fast, slow);
  const double det = f.inverse.det();
  if (std::abs(det) < 1e-12)
    throw ComplexEigenvalues("eigenvectors are (near) parallel; frame is singular");
  f.matrix = f.inverse.inverse();
  // crude 2-norm condition estimate via Frobenius bound
  const double fro = std::sqrt(fast.nu1 * fast.nu1 + fast.nu2 * fast.nu2 +
                               slow.nu1 * slow.nu1 + slow.nu2 * slow.nu2);
  f.condition = fro * fro / (2.0 * std::abs(det));
  return f;
}

SlowFastFrame build_frame(const ModelParams& params, int grid_n) {
  const RateField field(params);
  const auto eqs = find_equilibria(field, params.nu_max, EquilibriumSearch{.grid_n = grid_n});
  const Equilibrium* s = central_saddle(eqs);
  if (!s) throw NoSaddle("equilibrium set has no saddle; system is not bistable here");
  return build_frame(field, s->location);
}

double fast_component(const SlowFastFrame& frame, const VectorField2& field, double x, double y) {
  return dot(frame.matrix.row(0), field.drift(frame.to_state(x, y)));
}

namespace {

double fast_component_dx(const SlowFastFrame& frame, const VectorField2& field, double x,
                         double y) {
  const Point2 p = frame.to_state(x, y);
  const Point2 jd = field.jacobian(p) * frame.fast_direction();
  return dot(frame.matrix.row(0), jd);
}

// Safeguarded Newton for f(., y) = 0 from the previous node's root.  Falls
// back to an expanding bracket scan plus bisection when Newton stalls.
double solve_node(const SlowFastFrame& frame, const VectorField2& field, double y,
                  double x_prev, const ManifoldOptions& opts, bool& multiple) {
  double x = x_prev;
  double fx = fast_component(frame, field, x, y);
  for (int it = 0; it < 60 && std::abs(fx) > opts.root_tol; ++it) {
    const double dfx = fast_component_dx(frame, field, x, y);
    if (dfx == 0.0) break;
    const double step = -fx / dfx;
    if (!std::isfinite(step) || std::abs(step) > 0.5 * opts.x_window) break;
    x += step;
    fx = fast_component(frame, field, x, y);
  }
  if (std::abs(fx) <= opts.root_tol) {
    // audit the window for extra branches
    int crossings = 0;
    double prev = fast_component(frame, field, x_prev - opts.x_window, y);
    for (int k = 1; k <= opts.scan_points; ++k) {
      const double xs = x_prev - opts.x_window + 2.0 * opts.x_window * k / opts.scan_points;
      const double cur = fast_component(frame, field, xs, y);
      if (prev == 0.0 || prev * cur < 0.0) ++crossings;
      prev = cur;
    }
    if (crossings > 1) multiple = true;
    return x;
  }

  // bracket around x_prev, expanding up to the window
  double lo = x_prev, hi = x_prev;
  double flo = fast_component(frame, field, lo, y), fhi = flo;
  double span = std::max(1e-4, 1e-3 * opts.x_window);
  bool bracketed = false;
  while (span <= opts.x_window) {
    lo = x_prev - span;
    hi = x_prev + span;
    flo = fast_component(frame, field, lo, y);
    fhi = fast_component(frame, field, hi, y);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi < 0.0) {
      bracketed = true;
      break;
    }
    span *= 2.0;
  }
  if (!bracketed)
    throw RootNotBracketed("fast nullcline left the search window at y = " + std::to_string(y));
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fast_component(frame, field, mid, y);
    if (std::abs(fm) <= opts.root_tol || 0.5 * (hi - lo) < 1e-15) return mid;
    if (flo * fm < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

SlowManifold build_manifold(const VectorField2& field, const SlowFastFrame& frame,
                            const std::vector<Equilibrium>& equilibria,
                            const ManifoldOptions& opts) {
  SlowManifold m;
  m.frame = frame;

  double y_max = opts.y_max;
  if (y_max <= 0.0) {
    double extent = 0.0;
    for (const Equilibrium& e : equilibria)
      extent = std::max(extent, std::abs(frame.slow_coordinate(e.location)));
    y_max = (extent > 0.0) ? extent / 0.8 : 1.0;
  }

  int n = opts.n_nodes;
  if (n % 2 == 0) ++n;
  const int mid = (n - 1) / 2;
  const double h = 2.0 * y_max / (n - 1);
  m.reduced.ygrid = Grid1{n, -y_max - 0.5 * h, y_max + 0.5 * h};
  m.x_star.assign(static_cast<std::size_t>(n), 0.0);
  m.reduced.g.assign(static_cast<std::size_t>(n), 0.0);
  m.reduced.G.assign(static_cast<std::size_t>(n), 0.0);

  // continuation outward from the base point (y = 0, x = 0)
  m.x_star[static_cast<std::size_t>(mid)] =
      solve_node(frame, field, 0.0, 0.0, opts, m.multiple_roots);
  for (int i = mid + 1; i < n; ++i)
    m.x_star[static_cast<std::size_t>(i)] =
        solve_node(frame, field, m.reduced.ygrid.center(i),
                   m.x_star[static_cast<std::size_t>(i - 1)], opts, m.multiple_roots);
  for (int i = mid - 1; i >= 0; --i)
    m.x_star[static_cast<std::size_t>(i)] =
        solve_node(frame, field, m.reduced.ygrid.center(i),
                   m.x_star[static_cast<std::size_t>(i + 1)], opts, m.multiple_roots);

  for (int i = 0; i < n; ++i) {
    const double y = m.reduced.ygrid.center(i);
    const double x = m.x_star[static_cast<std::size_t>(i)];
    m.max_residual = std::max(m.max_residual, std::abs(fast_component(frame, field, x, y)));
    m.reduced.g[static_cast<std::size_t>(i)] =
        dot(frame.matrix.row(1), field.drift(frame.to_state(x, y)));
  }
  // G = -int g dy from the anchor at y = 0
  for (int i = mid + 1; i < n; ++i)
    m.reduced.G[static_cast<std::size_t>(i)] =
        m.reduced.G[static_cast<std::size_t>(i - 1)] -
        0.5 * (m.reduced.g[static_cast<std::size_t>(i)] +
               m.reduced.g[static_cast<std::size_t>(i - 1)]) * h;
  for (int i = mid - 1; i >= 0; --i)
    m.reduced.G[static_cast<std::size_t>(i)] =
        m.reduced.G[static_cast<std::size_t>(i + 1)] +
        0.5 * (m.reduced.g[static_cast<std::size_t>(i)] +
               m.reduced.g[static_cast<std::size_t>(i + 1)]) * h;
  return m;
}

SlowManifold build_manifold(const ModelParams& params, const ManifoldOptions& opts) {
  const RateField field(params);
  const auto eqs = find_equilibria(field, params.nu_max);
  const Equilibrium* s = central_saddle(eqs);
  if (!s) throw NoSaddle("equilibrium set has no saddle; system is not bistable here");
  const SlowFastFrame frame = build_frame(field, s->location);
  return build_manifold(field, frame, eqs, opts);
}

}  // namespace ratefp
