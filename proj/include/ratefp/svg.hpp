#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ratefp/grid.hpp"

namespace ratefp {

struct Curve {
  std::string name;
  std::vector<double> x, y;
};

// Deterministic SVG 1.1 emitters: fixed layout, to_chars number formatting,
// no timestamps, so renders are byte-stable for golden-file comparison.

void svg_heatmap(const std::filesystem::path& path, const DensityGrid2& p,
                 const std::string& title, const std::string& xlabel,
                 const std::string& ylabel);

void svg_curves(const std::filesystem::path& path, const std::vector<Curve>& curves,
                const std::string& title, const std::string& xlabel, const std::string& ylabel);

// Labeled points, one group per series (used for per-backend observables).
void svg_points(const std::filesystem::path& path, const std::vector<Curve>& series,
                const std::string& title, const std::string& xlabel, const std::string& ylabel);

}  // namespace ratefp
