#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ratefp/params.hpp"
#include "ratefp/threewell.hpp"

namespace ratefp {

// Solver resolutions and step sizes; defaults match the shipped presets.
struct NumericsConfig {
  int fp2d_n = 128;
  double fp2d_dt = 0.25;
  std::string fp2d_scheme = "implicit";  // or "explicit"
  int manifold_n = 1201;
  double fp1d_dt = 0.25;
  double t_end = 400.0;
  double snapshot_every = 0.0;  // 0 = final state only
  double p0_sd = 1.0;           // initial Gaussian width (nu_c/20 by default)
  double sde_dt = 1e-3;
  int sde_paths = 10000;
  double sde_t_end = 0.0;  // 0 = same as t_end
  double horizon = 20000.0;
  int histogram_n = 64;
  int equilibrium_grid_n = 128;
  int threads = 0;             // 0 = hardware concurrency
  double trajectory_stride = 0.0;  // >0: dump (path_id,t,nu1,nu2) every stride
};

struct SweepConfig {
  std::vector<double> delta_lambda;
  std::vector<double> w_plus;  // empty = not a three-well sweep
};

struct ExperimentConfig {
  ModelParams model;
  std::optional<ThreeWellParams> three_well;
  NumericsConfig numerics;
  SweepConfig sweep;
  std::vector<std::string> backends;  // subset of {"sde","fp2d","reduced"}
  std::uint64_t seed = 42;
  std::filesystem::path output_dir = "runs";

  void validate(bool sweep_mode = false) const;
  // canonical JSON of the resolved config (sorted keys); its SHA-256 prefix
  // names the run directory
  std::string canonical_json() const;
  std::string hash() const;
};

// Parse and validate a config file.  Accepts a "preset" key plus overrides;
// unknown keys anywhere are rejected with their full path.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig config_from_json_text(const std::string& text);

}  // namespace ratefp
