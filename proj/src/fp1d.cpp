#include "ratefp/fp1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ratefp/errors.hpp"

namespace ratefp {

namespace {

// B(x) = x / (e^x - 1), the exponential-fitting weight
double bernoulli(double x) {
  if (std::abs(x) < 1e-10) return 1.0 - 0.5 * x;
  if (x > 0.0) return x * std::exp(-x) / (1.0 - std::exp(-x));
  return x / std::expm1(x);
}

// Streaming log-sum-exp accumulator.
struct LogSum {
  double m = -std::numeric_limits<double>::infinity();
  double s = 0.0;
  void add(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return;
    if (x <= m) {
      s += std::exp(x - m);
    } else {
      s = s * std::exp(m - x) + 1.0;
      m = x;
    }
  }
  double log_value() const { return m + std::log(s); }
};

}  // namespace

int ReducedModel::nearest_node(double y) const {
  const double h = ygrid.h();
  int i = static_cast<int>(std::lround((y - y_min()) / h));
  return std::clamp(i, 0, ygrid.n - 1);
}

ReducedModel tabulate_reduced_model(const std::function<double(double)>& g, double y_half_width,
                                    int n_nodes, double y_center) {
  if (n_nodes < 3) throw ValidationError("n_nodes", "need at least 3 nodes");
  if (n_nodes % 2 == 0) ++n_nodes;  // keep the center a node
  ReducedModel m;
  const double h = 2.0 * y_half_width / (n_nodes - 1);
  m.ygrid = Grid1{n_nodes, y_center - y_half_width - 0.5 * h, y_center + y_half_width + 0.5 * h};
  m.g.resize(static_cast<std::size_t>(n_nodes));
  m.G.resize(static_cast<std::size_t>(n_nodes));
  for (int i = 0; i < n_nodes; ++i) m.g[static_cast<std::size_t>(i)] = g(m.ygrid.center(i));
  const int mid = (n_nodes - 1) / 2;
  m.G[static_cast<std::size_t>(mid)] = 0.0;
  for (int i = mid + 1; i < n_nodes; ++i)
    m.G[static_cast<std::size_t>(i)] =
        m.G[static_cast<std::size_t>(i - 1)] -
        0.5 * (m.g[static_cast<std::size_t>(i)] + m.g[static_cast<std::size_t>(i - 1)]) * h;
  for (int i = mid - 1; i >= 0; --i)
    m.G[static_cast<std::size_t>(i)] =
        m.G[static_cast<std::size_t>(i + 1)] +
        0.5 * (m.g[static_cast<std::size_t>(i)] + m.g[static_cast<std::size_t>(i + 1)]) * h;
  return m;
}

MonotoneCubic::MonotoneCubic(const std::vector<double>& x, const std::vector<double>& y)
    : x_(x), y_(y) {
  const std::size_t n = x.size();
  d_.assign(n, 0.0);
  if (n < 2) return;
  h_ = x[1] - x[0];
  std::vector<double> slope(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) slope[i] = (y[i + 1] - y[i]) / h_;
  d_[0] = slope[0];
  d_[n - 1] = slope[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (slope[i - 1] * slope[i] <= 0.0) {
      d_[i] = 0.0;  // local extremum: flatten to preserve monotone pieces
    } else {
      // Fritsch-Carlson harmonic mean
      d_[i] = 2.0 * slope[i - 1] * slope[i] / (slope[i - 1] + slope[i]);
    }
  }
}

double MonotoneCubic::operator()(double x) const {
  const std::size_t n = x_.size();
  if (x <= x_[0]) return y_[0] + d_[0] * (x - x_[0]);
  if (x >= x_[n - 1]) return y_[n - 1] + d_[n - 1] * (x - x_[n - 1]);
  std::size_t i = static_cast<std::size_t>((x - x_[0]) / h_);
  if (i >= n - 1) i = n - 2;
  const double t = (x - x_[i]) / h_;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
  const double h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t);
  const double h11 = t * t * (t - 1);
  return h00 * y_[i] + h10 * h_ * d_[i] + h01 * y_[i + 1] + h11 * h_ * d_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
  const std::size_t n = x_.size();
  if (x <= x_[0]) return d_[0];
  if (x >= x_[n - 1]) return d_[n - 1];
  std::size_t i = static_cast<std::size_t>((x - x_[0]) / h_);
  if (i >= n - 1) i = n - 2;
  const double t = (x - x_[i]) / h_;
  const double g00 = (6 * t * t - 6 * t) / h_;
  const double g10 = 3 * t * t - 4 * t + 1;
  const double g01 = -g00;
  const double g11 = 3 * t * t - 2 * t;
  return g00 * y_[i] + g10 * d_[i] + g01 * y_[i + 1] + g11 * d_[i + 1];
}

Fp1dSolver::Fp1dSolver(const ReducedModel& model, double beta, double dt) : dt_(dt) {
  if (!(dt > 0.0)) throw ValidationError("dt", "must be > 0");
  if (!(beta > 0.0)) throw ValidationError("beta", "must be > 0 for the diffusive solver");
  const int n = model.ygrid.n;
  const double h = model.ygrid.h();
  const double D = 0.5 * beta * beta;
  const double r = dt * D / (h * h);
  sub_.assign(static_cast<std::size_t>(n), 0.0);
  diag_.assign(static_cast<std::size_t>(n), 1.0);
  sup_.assign(static_cast<std::size_t>(n), 0.0);
  // face k between nodes k,k+1; flux J_k = (D/h) (B(-Pe_k) q_k - B(Pe_k) q_{k+1})
  for (int k = 0; k + 1 < n; ++k) {
    const double g_face = 0.5 * (model.g[static_cast<std::size_t>(k)] +
                                 model.g[static_cast<std::size_t>(k + 1)]);
    const double pe = g_face * h / D;
    const double bp = bernoulli(pe);
    const double bm = bernoulli(-pe);
    diag_[static_cast<std::size_t>(k)] += r * bm;
    sup_[static_cast<std::size_t>(k)] -= r * bp;
    diag_[static_cast<std::size_t>(k + 1)] += r * bp;
    sub_[static_cast<std::size_t>(k + 1)] -= r * bm;
  }
  work_a_.resize(static_cast<std::size_t>(n));
  work_b_.resize(static_cast<std::size_t>(n));
}

void Fp1dSolver::step(DensityGrid1& q) const {
  const std::size_t n = q.values.size();
  std::vector<double>& cp = work_a_;
  std::vector<double>& dp = work_b_;
  cp[0] = sup_[0] / diag_[0];
  dp[0] = q.values[0] / diag_[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double m = diag_[i] - sub_[i] * cp[i - 1];
    if (!(m > 0.0)) throw SolverDivergence("tridiagonal pivot lost positivity");
    cp[i] = sup_[i] / m;
    dp[i] = (q.values[i] - sub_[i] * dp[i - 1]) / m;
  }
  q.values[n - 1] = dp[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) q.values[i] = dp[i] - cp[i] * q.values[i + 1];
  q.time += dt_;
}

void fp1d_step(DensityGrid1& q, const ReducedModel& model, double beta, double dt) {
  Fp1dSolver(model, beta, dt).step(q);
}

DensityGrid1 solve_fp1d(const DensityGrid1& q0, const ReducedModel& model, double beta,
                        double t_end, double dt,
                        const std::function<void(const DensityGrid1&)>& on_snapshot,
                        double snapshot_every) {
  Fp1dSolver solver(model, beta, dt);
  DensityGrid1 q = q0;
  const long n_steps = static_cast<long>(std::llround(t_end / dt));
  long next_snap = (snapshot_every > 0.0) ? static_cast<long>(std::llround(snapshot_every / dt))
                                          : n_steps + 1;
  for (long k = 0; k < n_steps; ++k) {
    solver.step(q);
    if (!std::isfinite(q.values[0])) throw SolverDivergence("non-finite density");
    if (on_snapshot && (k + 1) % next_snap == 0) on_snapshot(q);
  }
  return q;
}

DensityGrid1 steady_state(const ReducedModel& model, double beta) {
  if (!(beta > 0.0)) throw ValidationError("beta", "must be > 0");
  DensityGrid1 q;
  q.grid = model.ygrid;
  q.values.resize(model.G.size());
  const double g_min = *std::min_element(model.G.begin(), model.G.end());
  const double c = 2.0 / (beta * beta);
  double mass = 0.0;
  for (std::size_t i = 0; i < model.G.size(); ++i) {
    q.values[i] = std::exp(-c * (model.G[i] - g_min));
    mass += q.values[i];
  }
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw DegenerateMass("stationary weights underflowed");
  const double scale = 1.0 / (mass * model.ygrid.h());
  for (double& v : q.values) v *= scale;
  return q;
}

std::string WellPartition::label(int well) const {
  const int n = n_wells();
  if (n >= 3) {
    if (well == 0) return "left";
    if (well == n - 1) return "right";
    return "middle";
  }
  return well == 0 ? "left" : "right";
}

std::pair<double, double> WellPartition::basin(int well, double y_lo, double y_hi) const {
  double lo = y_lo, hi = y_hi;
  for (double b : maxima) {
    if (b < minima[static_cast<std::size_t>(well)]) lo = std::max(lo, b);
    if (b > minima[static_cast<std::size_t>(well)]) hi = std::min(hi, b);
  }
  return {lo, hi};
}

WellPartition partition_wells(const ReducedModel& model) {
  WellPartition w;
  const int n = model.ygrid.n;
  for (int i = 0; i + 1 < n; ++i) {
    const double a = model.g[static_cast<std::size_t>(i)];
    const double b = model.g[static_cast<std::size_t>(i + 1)];
    if (a == 0.0 || a * b > 0.0) continue;
    // linear zero between nodes i, i+1
    const double t = a / (a - b);
    const double y = model.ygrid.center(i) + t * model.ygrid.h();
    if (a > 0.0 && b < 0.0)
      w.minima.push_back(y);  // G' = -g goes - to +
    else if (a < 0.0 && b > 0.0)
      w.maxima.push_back(y);
  }
  if (w.minima.empty()) throw NoWells("reduced potential has no interior minima");
  return w;
}

MfptResult mean_first_passage_time(const ReducedModel& model, double beta, double start,
                                   double absorb, double reflect) {
  if (!(beta > 0.0)) throw ValidationError("beta", "must be > 0");
  const bool rightward = absorb >= start;
  if ((rightward && !(reflect <= start)) || (!rightward && !(reflect >= start)))
    throw InvalidGeometry("start must lie between reflect and absorb");
  if (start < model.y_min() - 1e-12 || start > model.y_max() + 1e-12 ||
      absorb < model.y_min() - 1e-12 || absorb > model.y_max() + 1e-12)
    throw InvalidGeometry("start/absorb outside the tabulated domain");

  const int n = model.ygrid.n;
  const double h = model.ygrid.h();
  const double c = 2.0 / (beta * beta);

  // Work on a reversed view when absorbing to the left.
  auto G_at = [&](int i) {
    return rightward ? model.G[static_cast<std::size_t>(i)]
                     : model.G[static_cast<std::size_t>(n - 1 - i)];
  };
  auto to_view = [&](double y) {
    const int i = model.nearest_node(y);
    return rightward ? i : n - 1 - i;
  };
  const int ia = std::clamp(to_view(reflect), 0, n - 1);
  const int i0 = to_view(start);
  const int ib = to_view(absorb);
  if (!(ia <= i0 && i0 < ib))
    throw InvalidGeometry("degenerate first-passage interval after grid snap");

  // T = c * int_{y0}^{b} e^{cG(u)} int_{a}^{u} e^{-cG(v)} dv du, both integrals
  // trapezoid on the node grid, accumulated in log space.
  MfptResult res;
  LogSum outer;
  LogSum inner;  // log of int_a^u e^{-cG}
  // prime the inner integral up to u = i0
  for (int k = ia; k <= i0; ++k) {
    const double wgt = (k == ia || k == i0) ? 0.5 * h : h;
    if (ia == i0) break;
    inner.add(std::log(wgt) - c * G_at(k));
  }
  for (int u = i0; u <= ib; ++u) {
    if (u > i0) {
      // extend the trapezoid: previous endpoint weight becomes interior
      inner.add(std::log(0.5 * h) - c * G_at(u - 1));
      inner.add(std::log(0.5 * h) - c * G_at(u));
    }
    if (inner.s == 0.0) continue;
    const double wgt = (u == i0 || u == ib) ? 0.5 * h : h;
    outer.add(std::log(wgt) + c * G_at(u) + inner.log_value());
  }
  res.mean = c * std::exp(outer.log_value());

  // Kramers estimate: nearest G-minimum to the start, highest barrier between
  // it and the absorbing point, curvatures from central differences of g.
  res.kramers = std::numeric_limits<double>::quiet_NaN();
  WellPartition wp;
  try {
    wp = partition_wells(model);
  } catch (const NoWells&) {
    return res;
  }
  double best = std::numeric_limits<double>::infinity();
  double y_well = 0.0;
  for (double m : wp.minima) {
    if (std::abs(m - start) < best) {
      best = std::abs(m - start);
      y_well = m;
    }
  }
  double y_barrier = 0.0;
  bool have_barrier = false;
  for (double b : wp.maxima) {
    const double lo = std::min(y_well, absorb), hi = std::max(y_well, absorb);
    if (b > lo && b < hi && (!have_barrier || model.G[static_cast<std::size_t>(
                                 model.nearest_node(b))] >
                                 model.G[static_cast<std::size_t>(model.nearest_node(y_barrier))])) {
      y_barrier = b;
      have_barrier = true;
    }
  }
  if (!have_barrier) return res;
  auto curvature = [&](double y) {
    const int i = std::clamp(model.nearest_node(y), 1, n - 2);
    // G'' = -g'
    return -(model.g[static_cast<std::size_t>(i + 1)] - model.g[static_cast<std::size_t>(i - 1)]) /
           (2.0 * h);
  };
  const double gw = curvature(y_well);
  const double gb = curvature(y_barrier);
  if (gw > 0.0 && gb < 0.0) {
    const double dG = model.G[static_cast<std::size_t>(model.nearest_node(y_barrier))] -
                      model.G[static_cast<std::size_t>(model.nearest_node(y_well))];
    res.kramers = 2.0 * std::numbers::pi / std::sqrt(gw * -gb) * std::exp(c * dG);
  }
  return res;
}

double performance(const ReducedModel& model, double beta, const WellPartition& wells,
                   int correct_well) {
  if (wells.n_wells() < 2) throw NoWells("performance needs at least two wells");
  if (correct_well < 0 || correct_well >= wells.n_wells())
    throw ValidationError("correct_well", "index out of range");
  const DensityGrid1 qs = steady_state(model, beta);
  return well_mass(qs, wells, correct_well);
}

double well_mass(const DensityGrid1& q, const WellPartition& wells, int well) {
  const auto [lo, hi] = wells.basin(well, q.grid.lo, q.grid.hi);
  double s = 0.0;
  for (int i = 0; i < q.grid.n; ++i) {
    const double y = q.grid.center(i);
    if (y >= lo && y <= hi) s += q.values[static_cast<std::size_t>(i)];
  }
  return s * q.grid.h();
}

}  // namespace ratefp
