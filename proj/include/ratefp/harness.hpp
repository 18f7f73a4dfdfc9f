#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ratefp/config.hpp"

namespace ratefp {

struct ObservableReport {
  std::string backend;       // "sde" | "fp2d" | "reduced"
  double reaction_time = 0;  // NaN when the backend does not define one
  double performance = 0;
  std::string note;
};

struct FileEntry {
  std::string name;  // relative to the run directory
  std::string sha256;
};

struct ComparisonEntry {
  std::string a, b;
  double l1 = 0.0;
};

struct RunRecord {
  std::string config_hash;
  std::filesystem::path run_dir;
  std::string started_utc, finished_utc;
  std::vector<ObservableReport> observables;
  std::vector<ComparisonEntry> comparisons;
  std::vector<FileEntry> files;
  std::vector<std::string> backend_errors;  // "<backend>: <message>"
};

// Execute the selected backends, write every artifact (CSV + manifest) under
// a content-addressed run directory, cross-compare densities when two or
// more backends produced one.
RunRecord run_experiment(const ExperimentConfig& config);

// (delta_lambda, w_plus) grid of reduced-model observables; rows ordered by
// sweep index.  Writes sweep.csv plus the manifest.
RunRecord run_sweep(const ExperimentConfig& config);

// Render SVG figures from a finished run directory; returns the files
// written.  Throws MissingArtifact when the directory has nothing to plot.
std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& run_dir);

// Reload the manifest of a finished run.
RunRecord load_run_record(const std::filesystem::path& run_dir);

}  // namespace ratefp
