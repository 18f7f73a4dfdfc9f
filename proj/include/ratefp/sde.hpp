#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ratefp/grid.hpp"
#include "ratefp/model.hpp"
#include "ratefp/rng.hpp"
#include "ratefp/types.hpp"

namespace ratefp {

// Fold a coordinate back into [lo, hi] (specular reflection, repeated until
// inside).  The no-flux boundary condition at the process level.
inline double reflect_into(double x, double lo, double hi) {
  const double span = hi - lo;
  while (x < lo || x > hi) {
    if (x < lo) x = 2.0 * lo - x;
    if (x > hi) x = 2.0 * hi - x;
    if (!(span > 0.0)) return lo;
  }
  return x;
}

struct EnsembleState2 {
  std::vector<Point2> particles;
  double time = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t step_index = 0;  // counter for per-path noise draws
};

// One Euler-Maruyama step for every particle; reflecting boundaries on
// [0, nu_max]^2.  Deterministic given (seed, step_index, particle index),
// whatever the thread count.  Throws UnstableStep when a particle attempts
// to move farther than the domain diameter.
void step_em_2d(EnsembleState2& state, const VectorField2& field, double beta, double dt,
                double nu_max, int threads = 0);

// 1D analogue on [lo, hi] for the reduced dynamics; positions updated in
// place, draws indexed by (seed, path, step_index).
void step_em_1d(std::vector<double>& ys, const std::function<double(double)>& g, double beta,
                double dt, double lo, double hi, std::uint64_t seed, std::uint64_t step_index);

// Gaussian cloud around `center`, reflected into the domain.
std::vector<Point2> sample_gaussian2(int n, Point2 center, double sd, std::uint64_t seed,
                                     double nu_max);

// Sample particle positions from a gridded density: cell picked by mass,
// uniform within the cell.  Matches histogram comparisons by construction.
std::vector<Point2> sample_density(const DensityGrid2& p, int n, std::uint64_t seed);

DensityGrid2 histogram_density(std::span<const Point2> particles, const Grid2& grid);
DensityGrid1 histogram_density(std::span<const double> xs, const Grid1& grid);

struct FirstPassageSample {
  std::vector<double> exit_times;  // uncensored exits only
  long censored = 0;
  double horizon = 0.0;

  double mean() const;
  double stddev() const;
  double std_error() const;
};

// First-passage sampling for the scalar SDE dy = g(y) dt + beta dW with
// reflection on [lo, hi].  Paths run until `exit(y)` turns true or the
// horizon is reached; per-path noise streams make the result independent of
// the thread count.  Throws AllCensored when no path exits.
template <class GFn, class ExitFn>
FirstPassageSample sample_first_passage(double y0, ExitFn exit, GFn g, double beta, double dt,
                                        double horizon, int n_paths, std::uint64_t seed,
                                        double lo, double hi, int threads = 0);

// Convenience overload: exit when the path reaches `absorb` (from either side).
FirstPassageSample sample_first_passage_threshold(double y0, double absorb,
                                                  const std::function<double(double)>& g,
                                                  double beta, double dt, double horizon,
                                                  int n_paths, std::uint64_t seed, double lo,
                                                  double hi, int threads = 0);

namespace detail {
void parallel_for(long n, int threads, const std::function<void(long, long)>& body);
}

template <class GFn, class ExitFn>
FirstPassageSample sample_first_passage(double y0, ExitFn exit, GFn g, double beta, double dt,
                                        double horizon, int n_paths, std::uint64_t seed,
                                        double lo, double hi, int threads) {
  if (n_paths < 1) throw ValidationError("n_paths", "must be >= 1");
  if (!(horizon > 0.0)) throw ValidationError("horizon", "must be > 0");
  const long n_steps = static_cast<long>(horizon / dt);
  std::vector<double> times(static_cast<std::size_t>(n_paths), -1.0);
  const double sq = beta * std::sqrt(dt);

  detail::parallel_for(n_paths, threads, [&](long first, long last) {
    for (long p = first; p < last; ++p) {
      RandomStream rs(seed, static_cast<std::uint64_t>(p));
      double y = y0;
      if (exit(y)) {
        times[static_cast<std::size_t>(p)] = 0.0;
        continue;
      }
      for (long k = 0; k < n_steps; ++k) {
        y += g(y) * dt + sq * rs.normal(static_cast<std::uint64_t>(k));
        y = reflect_into(y, lo, hi);
        if (exit(y)) {
          times[static_cast<std::size_t>(p)] = (k + 1) * dt;
          break;
        }
      }
    }
  });

  FirstPassageSample out;
  out.horizon = horizon;
  for (double t : times) {
    if (t >= 0.0)
      out.exit_times.push_back(t);
    else
      ++out.censored;
  }
  if (out.exit_times.empty()) throw AllCensored("no path exited within the horizon");
  return out;
}

}  // namespace ratefp
