#include "ratefp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "ratefp/csv.hpp"
#include "ratefp/fp1d.hpp"
#include "ratefp/fp2d.hpp"
#include "ratefp/reduction.hpp"
#include "ratefp/sde.hpp"
#include "ratefp/sha256.hpp"
#include "ratefp/svg.hpp"

namespace ratefp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct RunContext {
  const ExperimentConfig& cfg;
  fs::path dir;
  RunRecord& rec;

  void add_file(const std::string& name) {
    rec.files.push_back({name, sha256_file_hex(dir / name)});
  }
};

void write_density1_csv(RunContext& ctx, const std::string& name, const DensityGrid1& q,
                        const char* xname) {
  std::vector<std::string> header{xname, "q"};
  CsvWriter w(ctx.dir / name, header);
  for (int i = 0; i < q.grid.n; ++i)
    w.row(std::vector<double>{q.grid.center(i), q.values[static_cast<std::size_t>(i)]});
  w.close();
  ctx.add_file(name);
}

void write_density2_csv(RunContext& ctx, const std::string& name, const DensityGrid2& p) {
  std::vector<std::string> header{"nu1", "nu2", "p"};
  CsvWriter w(ctx.dir / name, header);
  for (int i = 0; i < p.grid.n1; ++i)
    for (int j = 0; j < p.grid.n2; ++j)
      w.row(std::vector<double>{p.grid.center1(i), p.grid.center2(j), p.at(i, j)});
  w.close();
  ctx.add_file(name);
}

void write_manifold_csv(RunContext& ctx, const SlowManifold& m) {
  std::vector<std::string> header{"y", "x_star", "g_red", "G"};
  CsvWriter w(ctx.dir / "manifold.csv", header);
  for (int i = 0; i < m.reduced.ygrid.n; ++i)
    w.row(std::vector<double>{m.reduced.ygrid.center(i), m.x_star[static_cast<std::size_t>(i)],
                              m.reduced.g[static_cast<std::size_t>(i)],
                              m.reduced.G[static_cast<std::size_t>(i)]});
  w.close();
  ctx.add_file("manifold.csv");
}

void write_reduced_csv(RunContext& ctx, const std::string& name, const ReducedModel& m) {
  std::vector<std::string> header{"y", "g_red", "G"};
  CsvWriter w(ctx.dir / name, header);
  for (int i = 0; i < m.ygrid.n; ++i)
    w.row(std::vector<double>{m.ygrid.center(i), m.g[static_cast<std::size_t>(i)],
                              m.G[static_cast<std::size_t>(i)]});
  w.close();
  ctx.add_file(name);
}

void write_equilibria_csv(RunContext& ctx, const std::vector<Equilibrium>& eqs) {
  std::vector<std::string> header{"nu1", "nu2", "eig1", "eig2", "kind"};
  CsvWriter w(ctx.dir / "equilibria.csv", header);
  for (const Equilibrium& e : eqs) {
    const char* kind = e.kind == EqKind::stable ? "stable"
                       : e.kind == EqKind::saddle ? "saddle"
                                                  : "unstable";
    std::vector<std::string> cells{format_double(e.location.nu1), format_double(e.location.nu2),
                                   format_double(e.eig1), format_double(e.eig2), kind};
    w.row(cells);
  }
  w.close();
  ctx.add_file("equilibria.csv");
}

// Reaction-time protocol.  Two wells: start at the spontaneous (barrier)
// point, absorb at the correct-well minimum, reflect at the opposite domain
// edge.  Three wells: start at the middle-well minimum, absorb at the deeper
// external minimum, reflect at the opposite edge.
struct RtProtocol {
  double start = 0.0, absorb = 0.0, reflect = 0.0;
  int correct_well = 0;
};

RtProtocol reaction_time_protocol(const ReducedModel& m, const WellPartition& wells,
                                  double bias_sign) {
  RtProtocol p;
  const int n = wells.n_wells();
  const bool to_right = bias_sign >= 0.0;
  if (n >= 3) {
    const int mid = n / 2;
    p.start = wells.minima[static_cast<std::size_t>(mid)];
    p.correct_well = to_right ? n - 1 : 0;
  } else {
    // spontaneous point: the barrier between the two wells
    p.start = wells.maxima.empty() ? 0.0 : wells.maxima[wells.maxima.size() / 2];
    p.correct_well = to_right ? n - 1 : 0;
  }
  p.absorb = wells.minima[static_cast<std::size_t>(p.correct_well)];
  p.reflect = to_right ? m.y_min() : m.y_max();
  return p;
}

DensityGrid1 gaussian_density1(const Grid1& grid, double center, double sd) {
  DensityGrid1 q;
  q.grid = grid;
  q.values.resize(static_cast<std::size_t>(grid.n));
  for (int i = 0; i < grid.n; ++i) {
    const double d = (grid.center(i) - center) / sd;
    q.values[static_cast<std::size_t>(i)] = std::exp(-0.5 * d * d);
  }
  q.normalize();
  return q;
}

json observables_json(const std::vector<ObservableReport>& obs) {
  json arr = json::array();
  for (const ObservableReport& o : obs) {
    json e{{"backend", o.backend}, {"performance", o.performance}, {"note", o.note}};
    if (std::isnan(o.reaction_time))
      e["reaction_time"] = nullptr;
    else
      e["reaction_time"] = o.reaction_time;
    arr.push_back(e);
  }
  return arr;
}

void write_manifest(RunContext& ctx) {
  json j;
  j["config_hash"] = ctx.rec.config_hash;
  j["config"] = json::parse(ctx.cfg.canonical_json());
  j["started_utc"] = ctx.rec.started_utc;
  j["finished_utc"] = ctx.rec.finished_utc;
  j["observables"] = observables_json(ctx.rec.observables);
  json files = json::array();
  for (const FileEntry& f : ctx.rec.files) files.push_back({{"name", f.name}, {"sha256", f.sha256}});
  j["files"] = files;
  json comps = json::array();
  for (const ComparisonEntry& c : ctx.rec.comparisons)
    comps.push_back({{"a", c.a}, {"b", c.b}, {"l1", c.l1}});
  j["comparisons"] = comps;
  j["backend_errors"] = ctx.rec.backend_errors;
  std::ofstream out(ctx.dir / "run.json", std::ios::binary);
  out << j.dump(2) << '\n';
}

void write_observables_csv(RunContext& ctx) {
  std::vector<std::string> header{"backend", "reaction_time", "performance", "note"};
  CsvWriter w(ctx.dir / "observables.csv", header);
  for (const ObservableReport& o : ctx.rec.observables) {
    std::vector<std::string> cells{o.backend,
                                   std::isnan(o.reaction_time) ? "" : format_double(o.reaction_time),
                                   format_double(o.performance), o.note};
    w.row(cells);
  }
  w.close();
  ctx.add_file("observables.csv");
}

void write_comparisons_csv(RunContext& ctx) {
  if (ctx.rec.comparisons.empty()) return;
  std::vector<std::string> header{"a", "b", "l1"};
  CsvWriter w(ctx.dir / "comparisons.csv", header);
  for (const ComparisonEntry& c : ctx.rec.comparisons) {
    std::vector<std::string> cells{c.a, c.b, format_double(c.l1)};
    w.row(cells);
  }
  w.close();
  ctx.add_file("comparisons.csv");
}

}  // namespace

RunRecord run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  RunRecord rec;
  rec.config_hash = cfg.hash();
  rec.started_utc = utc_now();
  const fs::path dir = cfg.output_dir / ("ratefp-" + rec.config_hash);
  fs::create_directories(dir);
  rec.run_dir = dir;
  RunContext ctx{cfg, dir, rec};

  auto selected = [&cfg](const char* b) {
    return std::find(cfg.backends.begin(), cfg.backends.end(), b) != cfg.backends.end();
  };
  const NumericsConfig& nu = cfg.numerics;

  // ----- reduced model: either the slow manifold of the 2D field or the
  // built-in three-well family -----
  ReducedModel reduced;
  WellPartition wells;
  bool have_reduced = false;
  double bias = cfg.model.bias();

  if (cfg.three_well) {
    reduced = three_well_model(*cfg.three_well, bias);
    write_reduced_csv(ctx, "manifold.csv", reduced);
    wells = partition_wells(reduced);
    have_reduced = true;
  } else {
    try {
      const RateField field(cfg.model);
      const auto eqs =
          find_equilibria(field, cfg.model.nu_max, EquilibriumSearch{.grid_n = nu.equilibrium_grid_n});
      write_equilibria_csv(ctx, eqs);
      const Equilibrium* s = central_saddle(eqs);
      if (!s) throw NoSaddle("no saddle at these parameters");
      const SlowFastFrame frame = build_frame(field, s->location);
      SlowManifold manifold =
          build_manifold(field, frame, eqs, ManifoldOptions{.n_nodes = nu.manifold_n});
      write_manifold_csv(ctx, manifold);
      reduced = manifold.reduced;
      wells = partition_wells(reduced);
      have_reduced = true;

      // ----- fp2d backend -----
      if (selected("fp2d")) {
        try {
          const Grid2 grid = Grid2::square(nu.fp2d_n, cfg.model.nu_max);
          DensityGrid2 p0 = gaussian_density2(grid, s->location, nu.p0_sd);
          const Fp2dScheme scheme = nu.fp2d_scheme == "explicit" ? Fp2dScheme::explicit_euler
                                                                 : Fp2dScheme::implicit;
          int snap_idx = 0;
          auto on_snap = [&](const DensityGrid2& p) {
            char name[64];
            std::snprintf(name, sizeof(name), "density_t%04d.csv", snap_idx++);
            write_density2_csv(ctx, name, p);
          };
          DensityGrid2 p = solve_fp2d(p0, field, cfg.model.beta, nu.t_end, nu.fp2d_dt, scheme,
                                      nu.snapshot_every > 0 ? std::function<void(const DensityGrid2&)>(on_snap)
                                                            : std::function<void(const DensityGrid2&)>(),
                                      nu.snapshot_every);
          write_density2_csv(ctx, "density.csv", p);
          write_density1_csv(ctx, "marginal_nu1.csv", marginal(p, 0), "nu1");
          write_density1_csv(ctx, "marginal_nu2.csv", marginal(p, 1), "nu2");
          DensityGrid1 proj =
              project_onto_direction(p, frame.base, frame.matrix.row(1), reduced.ygrid);
          proj.normalize();
          write_density1_csv(ctx, "projection.csv", proj, "y");
          const double perf = well_mass(proj, wells, wells.n_wells() - 1);
          rec.observables.push_back(
              {"fp2d", kNaN,
               bias >= 0 ? perf : 1.0 - perf,
               "performance from the y-projection at t_end; no 2D reaction time"});
        } catch (const Error& e) {
          rec.backend_errors.push_back(std::string("fp2d: ") + e.what());
        }
      }

      // ----- sde backend: 2D ensemble histogram + reduced-drift passage -----
      if (selected("sde")) {
        try {
          const Grid2 hgrid = Grid2::square(nu.histogram_n, cfg.model.nu_max);
          DensityGrid2 p0h = gaussian_density2(hgrid, s->location, nu.p0_sd);
          EnsembleState2 ens;
          ens.seed = cfg.seed;
          ens.particles = sample_density(p0h, nu.sde_paths, cfg.seed);
          const double t_sde = nu.sde_t_end > 0 ? nu.sde_t_end : nu.t_end;
          const long n_steps = static_cast<long>(std::llround(t_sde / nu.sde_dt));
          std::ofstream traj;
          long stride = 0;
          if (nu.trajectory_stride > 0) {
            traj.open(dir / "trajectories.csv", std::ios::binary);
            traj << "path_id,t,nu1,nu2\n";
            stride = std::max<long>(1, static_cast<long>(std::llround(nu.trajectory_stride / nu.sde_dt)));
          }
          for (long k = 0; k < n_steps; ++k) {
            step_em_2d(ens, field, cfg.model.beta, nu.sde_dt, cfg.model.nu_max, nu.threads);
            if (stride > 0 && (k + 1) % stride == 0) {
              for (std::size_t pi = 0; pi < ens.particles.size(); ++pi)
                traj << pi << ',' << format_double(ens.time) << ','
                     << format_double(ens.particles[pi].nu1) << ','
                     << format_double(ens.particles[pi].nu2) << '\n';
            }
          }
          if (traj.is_open()) {
            traj.close();
            ctx.add_file("trajectories.csv");
          }
          DensityGrid2 hist = histogram_density(ens.particles, hgrid);
          hist.time = ens.time;
          write_density2_csv(ctx, "sde_histogram.csv", hist);
          DensityGrid1 proj =
              project_onto_direction(hist, frame.base, frame.matrix.row(1), reduced.ygrid);
          proj.normalize();
          write_density1_csv(ctx, "sde_projection.csv", proj, "y");
          const double perf = well_mass(proj, wells, wells.n_wells() - 1);

          const RtProtocol rt = reaction_time_protocol(reduced, wells, bias);
          MonotoneCubic g_interp(
              [&] {
                std::vector<double> xs(static_cast<std::size_t>(reduced.ygrid.n));
                for (int i = 0; i < reduced.ygrid.n; ++i)
                  xs[static_cast<std::size_t>(i)] = reduced.ygrid.center(i);
                return xs;
              }(),
              reduced.g);
          FirstPassageSample fp = sample_first_passage_threshold(
              rt.start, rt.absorb, [&g_interp](double y) { return g_interp(y); },
              cfg.model.beta, nu.sde_dt, nu.horizon, nu.sde_paths, cfg.seed + 1,
              reduced.y_min(), reduced.y_max(), nu.threads);
          std::string note = "reaction time from the reduced-drift ensemble";
          if (fp.censored > 0)
            note += " (" + std::to_string(fp.censored) + " censored paths excluded)";
          rec.observables.push_back({"sde", fp.mean(), bias >= 0 ? perf : 1.0 - perf, note});
        } catch (const Error& e) {
          rec.backend_errors.push_back(std::string("sde: ") + e.what());
        }
      }
    } catch (const Error& e) {
      rec.backend_errors.push_back(std::string("model: ") + e.what());
    }
  }

  // ----- reduced backend -----
  if (selected("reduced") && have_reduced) {
    try {
      const double sd_y = cfg.three_well ? 0.25 * reduced.y_max() : nu.p0_sd;
      DensityGrid1 q0 = gaussian_density1(reduced.ygrid, 0.0, sd_y);
      DensityGrid1 q = solve_fp1d(q0, reduced, cfg.model.beta, nu.t_end, nu.fp1d_dt);
      write_density1_csv(ctx, "q_reduced.csv", q, "y");
      DensityGrid1 qs = steady_state(reduced, cfg.model.beta);
      write_density1_csv(ctx, "steady_state.csv", qs, "y");
      const RtProtocol rt = reaction_time_protocol(reduced, wells, bias);
      const MfptResult mf =
          mean_first_passage_time(reduced, cfg.model.beta, rt.start, rt.absorb, rt.reflect);
      const double perf = performance(reduced, cfg.model.beta, wells, rt.correct_well);
      rec.observables.push_back(
          {"reduced", mf.mean, perf,
           "first-passage quadrature (kramers estimate " + format_double(mf.kramers) + ")"});
    } catch (const Error& e) {
      rec.backend_errors.push_back(std::string("reduced: ") + e.what());
    }
  }

  // ----- cross-backend comparisons on the shared y grid -----
  auto l1_between = [&](const char* fa, const char* fb) {
    const CsvTable ta = read_csv(dir / fa);
    const CsvTable tb = read_csv(dir / fb);
    const auto qa = ta.numeric_column("q");
    const auto qb = tb.numeric_column("q");
    const auto ys = ta.numeric_column("y");
    if (qa.size() != qb.size() || qa.size() < 2) return;
    const double h = ys[1] - ys[0];
    double s = 0.0;
    for (std::size_t i = 0; i < qa.size(); ++i) s += std::abs(qa[i] - qb[i]);
    rec.comparisons.push_back({fa, fb, s * h});
  };
  auto have = [&](const char* f) { return fs::exists(dir / f); };
  if (have("projection.csv") && have("q_reduced.csv")) l1_between("projection.csv", "q_reduced.csv");
  if (have("projection.csv") && have("steady_state.csv")) l1_between("projection.csv", "steady_state.csv");
  if (have("q_reduced.csv") && have("steady_state.csv")) l1_between("q_reduced.csv", "steady_state.csv");
  if (have("sde_projection.csv") && have("projection.csv")) l1_between("sde_projection.csv", "projection.csv");
  if (have("sde_projection.csv") && have("q_reduced.csv")) l1_between("sde_projection.csv", "q_reduced.csv");

  write_observables_csv(ctx);
  write_comparisons_csv(ctx);
  rec.finished_utc = utc_now();
  write_manifest(ctx);
  return rec;
}

RunRecord run_sweep(const ExperimentConfig& cfg) {
  cfg.validate(/*sweep_mode=*/true);
  RunRecord rec;
  rec.config_hash = cfg.hash();
  rec.started_utc = utc_now();
  const fs::path dir = cfg.output_dir / ("ratefp-" + rec.config_hash);
  fs::create_directories(dir);
  rec.run_dir = dir;
  RunContext ctx{cfg, dir, rec};

  const bool three_well = cfg.three_well.has_value() || !cfg.sweep.w_plus.empty();
  std::vector<double> wps = cfg.sweep.w_plus;
  if (wps.empty()) wps.push_back(kNaN);  // single column marker for two-well sweeps

  struct Row {
    double dl, wp, rt, perf;
  };
  const std::size_t n_jobs = wps.size() * cfg.sweep.delta_lambda.size();
  std::vector<Row> rows(n_jobs);
  std::vector<std::string> errors;
  std::mutex err_mutex;

  auto job = [&](std::size_t idx) {
    const std::size_t iw = idx / cfg.sweep.delta_lambda.size();
    const std::size_t id = idx % cfg.sweep.delta_lambda.size();
    const double wp = wps[iw];
    const double dl = cfg.sweep.delta_lambda[id];
    Row& row = rows[idx];
    row = {dl, wp, kNaN, kNaN};
    try {
      ReducedModel reduced;
      if (three_well) {
        ThreeWellParams twp = cfg.three_well.value_or(ThreeWellParams{});
        if (!std::isnan(wp)) twp.w_plus = wp;
        reduced = three_well_model(twp, dl);
      } else {
        ModelParams mp = cfg.model;
        mp.lambda1 = mp.lambda2 + dl;
        reduced = build_manifold(mp, ManifoldOptions{.n_nodes = cfg.numerics.manifold_n}).reduced;
      }
      const WellPartition wells = partition_wells(reduced);
      const RtProtocol rt = reaction_time_protocol(reduced, wells, dl);
      row.rt = mean_first_passage_time(reduced, cfg.model.beta, rt.start, rt.absorb, rt.reflect).mean;
      row.perf = performance(reduced, cfg.model.beta, wells, rt.correct_well);
    } catch (const Error& e) {
      std::lock_guard<std::mutex> lock(err_mutex);
      errors.push_back("sweep[" + std::to_string(idx) + "]: " + e.what());
    }
  };

  int nt = cfg.numerics.threads > 0 ? cfg.numerics.threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
  nt = std::max(1, std::min<int>(nt, static_cast<int>(n_jobs)));
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n_jobs; i = next.fetch_add(1)) job(i);
    });
  for (auto& th : pool) th.join();

  rec.backend_errors = errors;
  std::vector<std::string> header{"delta_lambda", "w_plus", "reaction_time", "performance"};
  CsvWriter w(dir / "sweep.csv", header);
  for (const Row& r : rows) {
    std::vector<std::string> cells{format_double(r.dl), std::isnan(r.wp) ? "" : format_double(r.wp),
                                   format_double(r.rt), format_double(r.perf)};
    w.row(cells);
  }
  w.close();
  ctx.add_file("sweep.csv");
  rec.finished_utc = utc_now();
  write_manifest(ctx);
  return rec;
}

RunRecord load_run_record(const fs::path& run_dir) {
  std::ifstream in(run_dir / "run.json");
  if (!in) throw MissingArtifact("no run.json in " + run_dir.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("run.json: ") + e.what());
  }
  RunRecord rec;
  rec.run_dir = run_dir;
  rec.config_hash = j.value("config_hash", "");
  rec.started_utc = j.value("started_utc", "");
  rec.finished_utc = j.value("finished_utc", "");
  for (const auto& o : j.value("observables", json::array())) {
    ObservableReport r;
    r.backend = o.value("backend", "");
    r.reaction_time = o["reaction_time"].is_null() ? kNaN : o["reaction_time"].get<double>();
    r.performance = o.value("performance", 0.0);
    r.note = o.value("note", "");
    rec.observables.push_back(r);
  }
  for (const auto& f : j.value("files", json::array()))
    rec.files.push_back({f.value("name", ""), f.value("sha256", "")});
  return rec;
}

std::vector<fs::path> emit_plots(const fs::path& run_dir) {
  const RunRecord rec = load_run_record(run_dir);
  std::vector<fs::path> written;
  auto have = [&](const char* f) { return fs::exists(run_dir / f); };

  if (have("density.csv")) {
    const CsvTable t = read_csv(run_dir / "density.csv");
    const auto nu1 = t.numeric_column("nu1");
    const auto nu2 = t.numeric_column("nu2");
    const auto pv = t.numeric_column("p");
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(pv.size()))));
    DensityGrid2 p;
    const double h1 = (nu1.back() - nu1.front()) / (n - 1);
    p.grid = Grid2{n, n, nu1.front() - 0.5 * h1, nu1.back() + 0.5 * h1, nu2.front() - 0.5 * h1,
                   nu2.back() + 0.5 * h1};
    p.values = pv;
    svg_heatmap(run_dir / "density.svg", p, "state density", "nu1 [Hz]", "nu2 [Hz]");
    written.push_back(run_dir / "density.svg");
  }

  std::vector<Curve> overlay;
  auto add_curve = [&](const char* file, const char* label) {
    if (!have(file)) return;
    const CsvTable t = read_csv(run_dir / file);
    overlay.push_back({label, t.numeric_column("y"), t.numeric_column("q")});
  };
  add_curve("projection.csv", "fp2d projection");
  add_curve("q_reduced.csv", "reduced fp1d");
  add_curve("steady_state.csv", "stationary");
  if (!overlay.empty()) {
    svg_curves(run_dir / "overlay_y.svg", overlay, "densities along the slow coordinate", "y",
               "q(y)");
    written.push_back(run_dir / "overlay_y.svg");
  }

  if (have("sweep.csv")) {
    const CsvTable t = read_csv(run_dir / "sweep.csv");
    const auto dl = t.numeric_column("delta_lambda");
    const auto wp = t.numeric_column("w_plus");
    const auto rt = t.numeric_column("reaction_time");
    const auto pf = t.numeric_column("performance");
    // group rows by w_plus
    std::vector<double> groups;
    for (double v : wp)
      if (std::find_if(groups.begin(), groups.end(), [v](double g) {
            return (std::isnan(g) && std::isnan(v)) || g == v;
          }) == groups.end())
        groups.push_back(v);
    std::vector<Curve> rts, pfs;
    for (double g : groups) {
      Curve cr, cp;
      cr.name = std::isnan(g) ? "two-well" : "w_plus=" + format_double(g);
      cp.name = cr.name;
      for (std::size_t i = 0; i < dl.size(); ++i) {
        const bool match = (std::isnan(g) && std::isnan(wp[i])) || wp[i] == g;
        if (!match) continue;
        cr.x.push_back(dl[i]);
        cr.y.push_back(rt[i]);
        cp.x.push_back(dl[i]);
        cp.y.push_back(pf[i]);
      }
      rts.push_back(cr);
      pfs.push_back(cp);
    }
    svg_curves(run_dir / "reaction_time.svg", rts, "reaction time vs bias", "delta_lambda",
               "reaction time");
    svg_curves(run_dir / "performance.svg", pfs, "performance vs bias", "delta_lambda",
               "performance");
    written.push_back(run_dir / "reaction_time.svg");
    written.push_back(run_dir / "performance.svg");
  } else if (!rec.observables.empty() && overlay.empty() && !have("density.csv")) {
    std::vector<Curve> pts;
    for (std::size_t i = 0; i < rec.observables.size(); ++i) {
      const ObservableReport& o = rec.observables[i];
      Curve c;
      c.name = o.backend;
      if (!std::isnan(o.reaction_time)) {
        c.x.push_back(static_cast<double>(i));
        c.y.push_back(o.reaction_time);
      }
      c.x.push_back(static_cast<double>(i));
      c.y.push_back(o.performance);
      pts.push_back(c);
    }
    svg_points(run_dir / "observables.svg", pts, "observables per backend", "backend index",
               "value");
    written.push_back(run_dir / "observables.svg");
  }

  if (written.empty()) throw MissingArtifact("run directory has no plottable artifacts");

  // sidecar manifest for the rendered files
  json plots = json::array();
  for (const fs::path& p : written)
    plots.push_back({{"name", p.filename().string()}, {"sha256", sha256_file_hex(p)}});
  std::ofstream out(run_dir / "plots.json", std::ios::binary);
  out << plots.dump(2) << '\n';
  return written;
}

}  // namespace ratefp
