#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>

#include <CLI11.hpp>

#include "ratefp/config.hpp"
#include "ratefp/harness.hpp"

namespace {

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ratefp::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const ratefp::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

void print_record(const ratefp::RunRecord& rec) {
  std::printf("run directory: %s\n", rec.run_dir.string().c_str());
  for (const auto& o : rec.observables) {
    if (std::isnan(o.reaction_time))
      std::printf("  %-8s performance=%.6g (%s)\n", o.backend.c_str(), o.performance,
                  o.note.c_str());
    else
      std::printf("  %-8s reaction_time=%.6g performance=%.6g (%s)\n", o.backend.c_str(),
                  o.reaction_time, o.performance, o.note.c_str());
  }
  for (const auto& c : rec.comparisons)
    std::printf("  L1(%s, %s) = %.6g\n", c.a.c_str(), c.b.c_str(), c.l1);
  for (const auto& e : rec.backend_errors) std::printf("  [error] %s\n", e.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bistable two-population rate model: SDE ensembles, 2D/1D "
               "Fokker-Planck solvers and slow-manifold observables"};
  app.require_subcommand(1);

  std::string config_path;
  std::string run_dir;

  auto* run = app.add_subcommand("run", "execute the configured experiment");
  run->add_option("config", config_path, "JSON config file")->required();

  auto* sweep = app.add_subcommand("sweep", "run the (delta_lambda, w_plus) observable sweep");
  sweep->add_option("config", config_path, "JSON config file")->required();

  auto* plot = app.add_subcommand("plot", "render SVG figures from a run directory");
  plot->add_option("run_dir", run_dir, "run directory with run.json")->required();

  auto* validate = app.add_subcommand("validate", "parse the config and print the resolved form");
  validate->add_option("config", config_path, "JSON config file")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed())
    return guarded([&] {
      const auto rec = ratefp::run_experiment(ratefp::load_config(config_path));
      print_record(rec);
      return rec.backend_errors.empty() ? 0 : 3;
    });
  if (sweep->parsed())
    return guarded([&] {
      const auto rec = ratefp::run_sweep(ratefp::load_config(config_path));
      print_record(rec);
      return rec.backend_errors.empty() ? 0 : 3;
    });
  if (plot->parsed())
    return guarded([&] {
      for (const auto& p : ratefp::emit_plots(run_dir))
        std::printf("wrote %s\n", p.string().c_str());
      return 0;
    });
  if (validate->parsed())
    return guarded([&] {
      const auto cfg = ratefp::load_config(config_path);
      std::printf("%s\n", cfg.canonical_json().c_str());
      std::printf("config hash: %s\n", cfg.hash().c_str());
      return 0;
    });
  return 1;
}
