#include "ratefp/fp2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ratefp/errors.hpp"

namespace ratefp {

namespace {

double bernoulli(double x) {
  if (std::abs(x) < 1e-10) return 1.0 - 0.5 * x;
  if (x > 0.0) return x * std::exp(-x) / (1.0 - std::exp(-x));
  return x / std::expm1(x);
}

}  // namespace

Fp2dSolver::Fp2dSolver(const Grid2& grid, const VectorField2& field, double beta, double dt,
                       Fp2dScheme scheme)
    : grid_(grid), beta_(beta), dt_(dt), scheme_(scheme) {
  if (!(dt > 0.0)) throw ValidationError("dt", "must be > 0");
  if (!(beta > 0.0)) throw ValidationError("beta", "must be > 0 for the diffusive solver");
  if (grid.n1 < 8 || grid.n2 < 8) throw ValidationError("grid", "need at least 8 cells per axis");

  const int n1 = grid.n1, n2 = grid.n2;
  // cell-center drift, then arithmetic face averages; boundary faces unused
  std::vector<double> F1(grid.size()), F2(grid.size());
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      const Point2 f = field.drift({grid.center1(i), grid.center2(j)});
      F1[static_cast<std::size_t>(i) * n2 + j] = f.nu1;
      F2[static_cast<std::size_t>(i) * n2 + j] = f.nu2;
    }
  f1_.assign(static_cast<std::size_t>(n1 + 1) * n2, 0.0);
  f2_.assign(static_cast<std::size_t>(n1) * (n2 + 1), 0.0);
  for (int i = 1; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      f1_[static_cast<std::size_t>(i) * n2 + j] =
          0.5 * (F1[static_cast<std::size_t>(i - 1) * n2 + j] +
                 F1[static_cast<std::size_t>(i) * n2 + j]);
  for (int i = 0; i < n1; ++i)
    for (int j = 1; j < n2; ++j)
      f2_[static_cast<std::size_t>(i) * (n2 + 1) + j] =
          0.5 * (F2[static_cast<std::size_t>(i) * n2 + j - 1] +
                 F2[static_cast<std::size_t>(i) * n2 + j]);

  if (scheme_ == Fp2dScheme::implicit) {
    x_half_ = make_factors(true, 0.5 * dt);
    x_full_ = make_factors(true, dt);
    y_half_ = make_factors(false, 0.5 * dt);
    y_full_ = make_factors(false, dt);
  } else {
    const double lim = explicit_dt_limit();
    if (dt > lim)
      throw CflViolation("explicit dt " + std::to_string(dt) +
                         " exceeds the positivity limit " + std::to_string(lim));
  }
  const int nmax = std::max(n1, n2);
  line_a_.resize(static_cast<std::size_t>(nmax));
  line_b_.resize(static_cast<std::size_t>(nmax));
  line_q_.resize(static_cast<std::size_t>(nmax));
}

Fp2dSolver::SweepFactors Fp2dSolver::make_factors(bool along_axis1, double dt) const {
  const int n1 = grid_.n1, n2 = grid_.n2;
  const double D = 0.5 * beta_ * beta_;
  const int n_line = along_axis1 ? n1 : n2;    // cells along the sweep
  const int n_lines = along_axis1 ? n2 : n1;
  const double h = along_axis1 ? grid_.h1() : grid_.h2();
  const double r = dt * D / (h * h);
  SweepFactors f;
  f.sub.assign(static_cast<std::size_t>(n_line) * n_lines, 0.0);
  f.diag.assign(static_cast<std::size_t>(n_line) * n_lines, 1.0);
  f.sup.assign(static_cast<std::size_t>(n_line) * n_lines, 0.0);
  for (int line = 0; line < n_lines; ++line) {
    double* sub = f.sub.data() + static_cast<std::size_t>(line) * n_line;
    double* diag = f.diag.data() + static_cast<std::size_t>(line) * n_line;
    double* sup = f.sup.data() + static_cast<std::size_t>(line) * n_line;
    for (int k = 0; k + 1 < n_line; ++k) {
      const double g_face = along_axis1
          ? f1_[static_cast<std::size_t>(k + 1) * n2 + line]
          : f2_[static_cast<std::size_t>(line) * (n2 + 1) + k + 1];
      const double pe = g_face * h / D;
      const double bp = bernoulli(pe);
      const double bm = bernoulli(-pe);
      diag[k] += r * bm;
      sup[k] -= r * bp;
      diag[k + 1] += r * bp;
      sub[k + 1] -= r * bm;
    }
  }
  return f;
}

void Fp2dSolver::sweep(DensityGrid2& p, const SweepFactors& f, bool along_axis1) const {
  const int n1 = grid_.n1, n2 = grid_.n2;
  const int n_line = along_axis1 ? n1 : n2;
  const int n_lines = along_axis1 ? n2 : n1;
  const std::size_t stride = along_axis1 ? static_cast<std::size_t>(n2) : 1;
  for (int line = 0; line < n_lines; ++line) {
    const double* sub = f.sub.data() + static_cast<std::size_t>(line) * n_line;
    const double* diag = f.diag.data() + static_cast<std::size_t>(line) * n_line;
    const double* sup = f.sup.data() + static_cast<std::size_t>(line) * n_line;
    double* q0 = p.values.data() + (along_axis1 ? static_cast<std::size_t>(line)
                                                : static_cast<std::size_t>(line) * n2);
    double* cp = line_a_.data();
    double* dp = line_b_.data();
    cp[0] = sup[0] / diag[0];
    dp[0] = q0[0] / diag[0];
    for (int k = 1; k < n_line; ++k) {
      const double m = diag[k] - sub[k] * cp[k - 1];
      cp[k] = sup[k] / m;
      dp[k] = (q0[static_cast<std::size_t>(k) * stride] - sub[k] * dp[k - 1]) / m;
    }
    q0[static_cast<std::size_t>(n_line - 1) * stride] = dp[n_line - 1];
    for (int k = n_line - 2; k >= 0; --k)
      q0[static_cast<std::size_t>(k) * stride] =
          dp[k] - cp[k] * q0[static_cast<std::size_t>(k + 1) * stride];
  }
}

double Fp2dSolver::explicit_dt_limit() const {
  const int n1 = grid_.n1, n2 = grid_.n2;
  const double D = 0.5 * beta_ * beta_;
  const double h1 = grid_.h1(), h2 = grid_.h2();
  double worst = 0.0;  // max outflow coefficient per unit dt
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      double out = 0.0;
      if (i + 1 < n1) out += bernoulli(-f1_[static_cast<std::size_t>(i + 1) * n2 + j] * h1 / D) * D / (h1 * h1);
      if (i > 0) out += bernoulli(f1_[static_cast<std::size_t>(i) * n2 + j] * h1 / D) * D / (h1 * h1);
      if (j + 1 < n2) out += bernoulli(-f2_[static_cast<std::size_t>(i) * (n2 + 1) + j + 1] * h2 / D) * D / (h2 * h2);
      if (j > 0) out += bernoulli(f2_[static_cast<std::size_t>(i) * (n2 + 1) + j] * h2 / D) * D / (h2 * h2);
      worst = std::max(worst, out);
    }
  return worst > 0.0 ? 1.0 / worst : std::numeric_limits<double>::infinity();
}

void Fp2dSolver::explicit_step(DensityGrid2& p) const {
  const int n1 = grid_.n1, n2 = grid_.n2;
  const double D = 0.5 * beta_ * beta_;
  const double h1 = grid_.h1(), h2 = grid_.h2();
  std::vector<double> next(p.values.size(), 0.0);
  // flux through vertical faces (normal along axis 1)
  for (int i = 1; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      const double g = f1_[static_cast<std::size_t>(i) * n2 + j];
      const double pe = g * h1 / D;
      const double flux = (D / h1) * (bernoulli(-pe) * p.at(i - 1, j) - bernoulli(pe) * p.at(i, j));
      next[static_cast<std::size_t>(i - 1) * n2 + j] -= flux / h1;
      next[static_cast<std::size_t>(i) * n2 + j] += flux / h1;
    }
  for (int i = 0; i < n1; ++i)
    for (int j = 1; j < n2; ++j) {
      const double g = f2_[static_cast<std::size_t>(i) * (n2 + 1) + j];
      const double pe = g * h2 / D;
      const double flux = (D / h2) * (bernoulli(-pe) * p.at(i, j - 1) - bernoulli(pe) * p.at(i, j));
      next[static_cast<std::size_t>(i) * n2 + j - 1] -= flux / h2;
      next[static_cast<std::size_t>(i) * n2 + j] += flux / h2;
    }
  for (std::size_t k = 0; k < p.values.size(); ++k) p.values[k] += dt_ * next[k];
}

void Fp2dSolver::step(DensityGrid2& p) {
  if (scheme_ == Fp2dScheme::explicit_euler) {
    explicit_step(p);
  } else if (parity_ % 2 == 0) {
    sweep(p, x_half_, true);
    sweep(p, y_full_, false);
    sweep(p, x_half_, true);
  } else {
    sweep(p, y_half_, false);
    sweep(p, x_full_, true);
    sweep(p, y_half_, false);
  }
  ++parity_;
  p.time += dt_;
}

DensityGrid2 gaussian_density2(const Grid2& grid, Point2 center, double sd) {
  DensityGrid2 p;
  p.grid = grid;
  p.values.resize(grid.size());
  const double inv = 1.0 / (2.0 * sd * sd);
  for (int i = 0; i < grid.n1; ++i)
    for (int j = 0; j < grid.n2; ++j) {
      const double dx = grid.center1(i) - center.nu1;
      const double dy = grid.center2(j) - center.nu2;
      p.at(i, j) = std::exp(-(dx * dx + dy * dy) * inv);
    }
  p.normalize();
  return p;
}

DensityGrid2 solve_fp2d(const DensityGrid2& p0, const VectorField2& field, double beta,
                        double t_end, double dt, Fp2dScheme scheme,
                        const std::function<void(const DensityGrid2&)>& on_snapshot,
                        double snapshot_every) {
  Fp2dSolver solver(p0.grid, field, beta, dt, scheme);
  DensityGrid2 p = p0;
  const long n_steps = static_cast<long>(std::llround(t_end / dt));
  const long snap_stride = (snapshot_every > 0.0)
                               ? std::max<long>(1, static_cast<long>(std::llround(snapshot_every / dt)))
                               : n_steps + 1;
  const double mass0 = p.mass();
  for (long k = 0; k < n_steps; ++k) {
    solver.step(p);
    if ((k & 63) == 0 || k + 1 == n_steps) {
      if (!std::isfinite(p.values[0])) throw SolverDivergence("non-finite density");
      if (std::abs(p.mass() - mass0) > 1e-6)
        throw SolverDivergence("mass conservation lost");
    }
    if (on_snapshot && (k + 1) % snap_stride == 0) on_snapshot(p);
  }
  return p;
}

void fp2d_step(DensityGrid2& p, const VectorField2& field, double beta, double dt,
               Fp2dScheme scheme) {
  Fp2dSolver(p.grid, field, beta, dt, scheme).step(p);
}

DensityGrid1 marginal(const DensityGrid2& p, int axis) {
  if (axis != 0 && axis != 1) throw ValidationError("axis", "must be 0 or 1");
  DensityGrid1 m;
  if (axis == 0) {
    m.grid = Grid1{p.grid.n1, p.grid.lo1, p.grid.hi1};
    m.values.assign(static_cast<std::size_t>(p.grid.n1), 0.0);
    for (int i = 0; i < p.grid.n1; ++i) {
      double s = 0.0;
      for (int j = 0; j < p.grid.n2; ++j) s += p.at(i, j);
      m.values[static_cast<std::size_t>(i)] = s * p.grid.h2();
    }
  } else {
    m.grid = Grid1{p.grid.n2, p.grid.lo2, p.grid.hi2};
    m.values.assign(static_cast<std::size_t>(p.grid.n2), 0.0);
    for (int j = 0; j < p.grid.n2; ++j) {
      double s = 0.0;
      for (int i = 0; i < p.grid.n1; ++i) s += p.at(i, j);
      m.values[static_cast<std::size_t>(j)] = s * p.grid.h1();
    }
  }
  m.time = p.time;
  return m;
}

DensityGrid1 project_onto_direction(const DensityGrid2& p, Point2 base, Point2 slow_row,
                                    const Grid1& ygrid) {
  const double rn = norm(slow_row);
  if (!(rn > 1e-14)) throw SingularTransform("projection direction has zero norm");
  DensityGrid1 q;
  q.grid = ygrid;
  q.values.assign(static_cast<std::size_t>(ygrid.n), 0.0);
  q.time = p.time;
  const double dy = ygrid.h();
  // projected half-span of one cell
  const double half = 0.5 * (std::abs(slow_row.nu1) * p.grid.h1() +
                             std::abs(slow_row.nu2) * p.grid.h2());
  for (int i = 0; i < p.grid.n1; ++i)
    for (int j = 0; j < p.grid.n2; ++j) {
      const double m = p.at(i, j) * p.grid.cell_area();
      if (m <= 0.0) continue;
      const double yc = slow_row.nu1 * (p.grid.center1(i) - base.nu1) +
                        slow_row.nu2 * (p.grid.center2(j) - base.nu2);
      const double lo = yc - half, hi = yc + half;
      int klo = static_cast<int>(std::floor((lo - ygrid.lo) / dy));
      int khi = static_cast<int>(std::floor((hi - ygrid.lo) / dy));
      klo = std::max(klo, 0);
      khi = std::min(khi, ygrid.n - 1);
      for (int k = klo; k <= khi; ++k) {
        const double a = std::max(lo, ygrid.lo + k * dy);
        const double b = std::min(hi, ygrid.lo + (k + 1) * dy);
        if (b > a) q.values[static_cast<std::size_t>(k)] += m * (b - a) / (hi - lo);
      }
    }
  for (double& v : q.values) v /= dy;
  return q;
}

std::vector<DensityMode> density_modes(const DensityGrid2& p, double prominence_frac) {
  // H0 persistence: insert cells from high to low into a union-find forest;
  // a component that merges into a higher one dies, its prominence being
  // peak minus the merge level.
  const int n1 = p.grid.n1, n2 = p.grid.n2;
  const std::size_t total = p.values.size();
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return p.values[a] > p.values[b]; });
  std::vector<long> parent(total, -1);
  std::vector<double> comp_peak(total, 0.0);
  std::vector<std::size_t> comp_seed(total, 0);
  struct Cand {
    std::size_t seed;
    double peak;
    double death;
  };
  std::vector<Cand> cands;
  auto find = [&](std::size_t x) {
    while (parent[x] != static_cast<long>(x)) {
      parent[x] = parent[static_cast<std::size_t>(parent[x])];
      x = static_cast<std::size_t>(parent[x]);
    }
    return x;
  };
  const double vmax = *std::max_element(p.values.begin(), p.values.end());
  for (std::size_t idx : order) {
    const double v = p.values[idx];
    if (v <= 0.0) break;
    const int i = static_cast<int>(idx) / n2;
    const int j = static_cast<int>(idx) % n2;
    std::vector<std::size_t> roots;
    for (int di = -1; di <= 1; ++di)
      for (int dj = -1; dj <= 1; ++dj) {
        if (di == 0 && dj == 0) continue;
        const int a = i + di, b = j + dj;
        if (a < 0 || a >= n1 || b < 0 || b >= n2) continue;
        const std::size_t nb = static_cast<std::size_t>(a) * n2 + b;
        if (parent[nb] < 0) continue;
        const std::size_t r = find(nb);
        if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
    parent[idx] = static_cast<long>(idx);
    if (roots.empty()) {
      comp_peak[idx] = v;
      comp_seed[idx] = idx;
      cands.push_back({idx, v, 0.0});
      continue;
    }
    std::sort(roots.begin(), roots.end(),
              [&](std::size_t a, std::size_t b) { return comp_peak[a] > comp_peak[b]; });
    const std::size_t main = roots[0];
    parent[idx] = static_cast<long>(main);
    for (std::size_t r = 1; r < roots.size(); ++r) {
      for (Cand& c : cands)
        if (c.seed == comp_seed[roots[r]] && c.death == 0.0) c.death = v;
      parent[roots[r]] = static_cast<long>(main);
    }
  }
  std::vector<DensityMode> out;
  for (const Cand& c : cands) {
    const double prom = c.peak - c.death;
    if (prom < prominence_frac * vmax) continue;
    const int i = static_cast<int>(c.seed) / n2;
    const int j = static_cast<int>(c.seed) % n2;
    if (i == 0 || i == n1 - 1 || j == 0 || j == n2 - 1) continue;  // interior only
    out.push_back({i, j, c.peak, prom});
  }
  std::sort(out.begin(), out.end(),
            [](const DensityMode& a, const DensityMode& b) { return a.value > b.value; });
  return out;
}

}  // namespace ratefp
