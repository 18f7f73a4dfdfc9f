#include "ratefp/sde.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace ratefp {

namespace detail {

void parallel_for(long n, int threads, const std::function<void(long, long)>& body) {
  int nt = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (nt < 1) nt = 1;
  nt = static_cast<int>(std::min<long>(nt, n));
  if (nt <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  const long chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    const long first = t * chunk;
    const long last = std::min(n, first + chunk);
    if (first >= last) break;
    pool.emplace_back([&body, first, last] { body(first, last); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

void step_em_2d(EnsembleState2& state, const VectorField2& field, double beta, double dt,
                double nu_max, int threads) {
  if (!(dt > 0.0)) throw ValidationError("dt", "must be > 0");
  const double sq = beta * std::sqrt(dt);
  const double diameter = nu_max * std::numbers::sqrt2;
  const std::uint64_t step = state.step_index;
  std::atomic<bool> unstable{false};

  detail::parallel_for(static_cast<long>(state.particles.size()), threads,
                       [&](long first, long last) {
    for (long i = first; i < last; ++i) {
      Point2& q = state.particles[static_cast<std::size_t>(i)];
      const Point2 f = field.drift(q);
      double z1, z2;
      RandomStream rs(state.seed, static_cast<std::uint64_t>(i));
      rs.normal_pair(step, z1, z2);
      const Point2 moved{q.nu1 + f.nu1 * dt + sq * z1, q.nu2 + f.nu2 * dt + sq * z2};
      if (norm(moved - q) > diameter) {
        unstable.store(true, std::memory_order_relaxed);
        return;
      }
      q.nu1 = reflect_into(moved.nu1, 0.0, nu_max);
      q.nu2 = reflect_into(moved.nu2, 0.0, nu_max);
    }
  });

  if (unstable) throw UnstableStep("particle displacement exceeded the domain diameter; reduce dt");
  state.time += dt;
  state.step_index += 1;
}

void step_em_1d(std::vector<double>& ys, const std::function<double(double)>& g, double beta,
                double dt, double lo, double hi, std::uint64_t seed, std::uint64_t step_index) {
  if (!(dt > 0.0)) throw ValidationError("dt", "must be > 0");
  const double sq = beta * std::sqrt(dt);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    RandomStream rs(seed, i);
    double& y = ys[i];
    y += g(y) * dt + sq * rs.normal(step_index);
    y = reflect_into(y, lo, hi);
  }
}

std::vector<Point2> sample_gaussian2(int n, Point2 center, double sd, std::uint64_t seed,
                                     double nu_max) {
  std::vector<Point2> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    RandomStream rs(seed, static_cast<std::uint64_t>(i));
    double z1, z2;
    rs.normal_pair(0, z1, z2);
    out[static_cast<std::size_t>(i)] = {reflect_into(center.nu1 + sd * z1, 0.0, nu_max),
                                        reflect_into(center.nu2 + sd * z2, 0.0, nu_max)};
  }
  return out;
}

std::vector<Point2> sample_density(const DensityGrid2& p, int n, std::uint64_t seed) {
  // cumulative cell masses
  std::vector<double> cdf(p.values.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < p.values.size(); ++k) {
    acc += std::max(0.0, p.values[k]);
    cdf[k] = acc;
  }
  if (!(acc > 0.0)) throw DegenerateMass("cannot sample from an empty density");
  std::vector<Point2> out(static_cast<std::size_t>(n));
  const Grid2& g = p.grid;
  for (int i = 0; i < n; ++i) {
    RandomStream rs(seed, static_cast<std::uint64_t>(i));
    const double u = rs.uniform(0) * acc;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    const std::size_t k = static_cast<std::size_t>(it - cdf.begin());
    const int ci = static_cast<int>(k) / g.n2;
    const int cj = static_cast<int>(k) % g.n2;
    out[static_cast<std::size_t>(i)] = {g.lo1 + (ci + rs.uniform(1)) * g.h1(),
                                        g.lo2 + (cj + rs.uniform(2)) * g.h2()};
  }
  return out;
}

DensityGrid2 histogram_density(std::span<const Point2> particles, const Grid2& grid) {
  if (particles.empty()) throw ValidationError("particles", "need at least one particle");
  DensityGrid2 d;
  d.grid = grid;
  d.values.assign(grid.size(), 0.0);
  auto clamp_cell = [](double x, double lo, double h, int n) {
    int i = static_cast<int>(std::floor((x - lo) / h));
    return std::clamp(i, 0, n - 1);
  };
  for (const Point2& q : particles) {
    const int i = clamp_cell(q.nu1, grid.lo1, grid.h1(), grid.n1);
    const int j = clamp_cell(q.nu2, grid.lo2, grid.h2(), grid.n2);
    d.at(i, j) += 1.0;
  }
  const double norm = 1.0 / (static_cast<double>(particles.size()) * grid.cell_area());
  for (double& v : d.values) v *= norm;
  return d;
}

DensityGrid1 histogram_density(std::span<const double> xs, const Grid1& grid) {
  if (xs.empty()) throw ValidationError("particles", "need at least one particle");
  DensityGrid1 d;
  d.grid = grid;
  d.values.assign(static_cast<std::size_t>(grid.n), 0.0);
  for (double x : xs) d.values[static_cast<std::size_t>(grid.cell_of(x))] += 1.0;
  const double norm = 1.0 / (static_cast<double>(xs.size()) * grid.h());
  for (double& v : d.values) v *= norm;
  return d;
}

double FirstPassageSample::mean() const {
  double s = 0.0;
  for (double t : exit_times) s += t;
  return s / static_cast<double>(exit_times.size());
}

double FirstPassageSample::stddev() const {
  if (exit_times.size() < 2) return 0.0;
  const double m = mean();
  double s = 0.0;
  for (double t : exit_times) s += (t - m) * (t - m);
  return std::sqrt(s / static_cast<double>(exit_times.size() - 1));
}

double FirstPassageSample::std_error() const {
  return stddev() / std::sqrt(static_cast<double>(exit_times.size()));
}

FirstPassageSample sample_first_passage_threshold(double y0, double absorb,
                                                  const std::function<double(double)>& g,
                                                  double beta, double dt, double horizon,
                                                  int n_paths, std::uint64_t seed, double lo,
                                                  double hi, int threads) {
  if (absorb >= y0) {
    return sample_first_passage(
        y0, [absorb](double y) { return y >= absorb; }, [&g](double y) { return g(y); }, beta,
        dt, horizon, n_paths, seed, lo, hi, threads);
  }
  return sample_first_passage(
      y0, [absorb](double y) { return y <= absorb; }, [&g](double y) { return g(y); }, beta, dt,
      horizon, n_paths, seed, lo, hi, threads);
}

}  // namespace ratefp
