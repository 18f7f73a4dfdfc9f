#include "ratefp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "ratefp/csv.hpp"
#include "ratefp/errors.hpp"

namespace ratefp {

namespace {

constexpr double kWidth = 640.0, kHeight = 480.0;
constexpr double kLeft = 70.0, kRight = 30.0, kTop = 40.0, kBottom = 50.0;

const char* kSeriesColor[6] = {"#1f77b4", "#d62728", "#2ca02c",
                               "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) { return format_double(std::round(v * 100.0) / 100.0); }

// 9-stop viridis ramp
void colormap(double t, int& r, int& g, int& b) {
  static const int stops[9][3] = {{68, 1, 84},    {71, 44, 122},  {59, 81, 139},
                                  {44, 113, 142}, {33, 144, 141}, {39, 173, 129},
                                  {92, 200, 99},  {170, 220, 50}, {253, 231, 37}};
  t = std::clamp(t, 0.0, 1.0) * 8.0;
  const int k = std::min(7, static_cast<int>(t));
  const double f = t - k;
  r = static_cast<int>(std::lround(stops[k][0] + f * (stops[k + 1][0] - stops[k][0])));
  g = static_cast<int>(std::lround(stops[k][1] + f * (stops[k + 1][1] - stops[k][1])));
  b = static_cast<int>(std::lround(stops[k][2] + f * (stops[k + 1][2] - stops[k][2])));
}

std::string hex_color(int r, int g, int b) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

struct Frame {
  double x0, x1, y0, y1;  // data range
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const {
    return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

void open_svg(std::ofstream& out, const std::filesystem::path& path) {
  out.open(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path.string());
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(kWidth)
      << "\" height=\"" << fmt(kHeight) << "\" viewBox=\"0 0 " << fmt(kWidth) << " "
      << fmt(kHeight) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
}

void draw_axes(std::ofstream& out, const Frame& f, const std::string& title,
               const std::string& xlabel, const std::string& ylabel) {
  out << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\""
      << fmt(kWidth - kLeft - kRight) << "\" height=\"" << fmt(kHeight - kTop - kBottom)
      << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  out << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
  out << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"" << fmt(kHeight - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << xlabel
      << "</text>\n";
  out << "<text x=\"18\" y=\"" << fmt(kHeight / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
      << "transform=\"rotate(-90 18 " << fmt(kHeight / 2) << ")\">" << ylabel << "</text>\n";
  // min/max ticks
  for (int corner = 0; corner < 2; ++corner) {
    const double xv = corner ? f.x1 : f.x0;
    const double yv = corner ? f.y1 : f.y0;
    out << "<text x=\"" << fmt(f.px(xv)) << "\" y=\"" << fmt(kHeight - kBottom + 16)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_double(std::round(xv * 1000.0) / 1000.0) << "</text>\n";
    out << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(f.py(yv) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_double(std::round(yv * 1000.0) / 1000.0) << "</text>\n";
  }
}

}  // namespace

void svg_heatmap(const std::filesystem::path& path, const DensityGrid2& p,
                 const std::string& title, const std::string& xlabel,
                 const std::string& ylabel) {
  std::ofstream out;
  open_svg(out, path);
  const Frame f{p.grid.lo1, p.grid.hi1, p.grid.lo2, p.grid.hi2};
  const double vmax = *std::max_element(p.values.begin(), p.values.end());
  const double cw = f.px(p.grid.lo1 + p.grid.h1()) - f.px(p.grid.lo1);
  const double ch = f.py(p.grid.lo2) - f.py(p.grid.lo2 + p.grid.h2());
  out << "<g shape-rendering=\"crispEdges\">\n";
  for (int i = 0; i < p.grid.n1; ++i)
    for (int j = 0; j < p.grid.n2; ++j) {
      int r, g, b;
      colormap(vmax > 0.0 ? p.at(i, j) / vmax : 0.0, r, g, b);
      out << "<rect x=\"" << fmt(f.px(p.grid.lo1 + i * p.grid.h1())) << "\" y=\""
          << fmt(f.py(p.grid.lo2 + (j + 1) * p.grid.h2())) << "\" width=\"" << fmt(cw + 0.5)
          << "\" height=\"" << fmt(ch + 0.5) << "\" fill=\"" << hex_color(r, g, b) << "\"/>\n";
    }
  out << "</g>\n";
  draw_axes(out, f, title, xlabel, ylabel);
  out << "</svg>\n";
}

void svg_curves(const std::filesystem::path& path, const std::vector<Curve>& curves,
                const std::string& title, const std::string& xlabel, const std::string& ylabel) {
  if (curves.empty()) throw MissingArtifact("no curves to draw");
  double x0 = curves[0].x[0], x1 = x0, y0 = curves[0].y[0], y1 = y0;
  for (const Curve& c : curves)
    for (std::size_t k = 0; k < c.x.size(); ++k) {
      x0 = std::min(x0, c.x[k]);
      x1 = std::max(x1, c.x[k]);
      y0 = std::min(y0, c.y[k]);
      y1 = std::max(y1, c.y[k]);
    }
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) y1 = y0 + 1.0;
  const double pad = 0.05 * (y1 - y0);
  const Frame f{x0, x1, y0 - pad, y1 + pad};
  std::ofstream out;
  open_svg(out, path);
  for (std::size_t c = 0; c < curves.size(); ++c) {
    out << "<polyline fill=\"none\" stroke=\"" << kSeriesColor[c % 6]
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < curves[c].x.size(); ++k) {
      if (k) out << ' ';
      out << fmt(f.px(curves[c].x[k])) << ',' << fmt(f.py(curves[c].y[k]));
    }
    out << "\"/>\n";
  }
  // legend
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const double ly = kTop + 16.0 + 16.0 * static_cast<double>(c);
    out << "<line x1=\"" << fmt(kLeft + 8) << "\" y1=\"" << fmt(ly) << "\" x2=\""
        << fmt(kLeft + 32) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << kSeriesColor[c % 6]
        << "\" stroke-width=\"1.5\"/>\n"
        << "<text x=\"" << fmt(kLeft + 38) << "\" y=\"" << fmt(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << curves[c].name << "</text>\n";
  }
  draw_axes(out, f, title, xlabel, ylabel);
  out << "</svg>\n";
}

void svg_points(const std::filesystem::path& path, const std::vector<Curve>& series,
                const std::string& title, const std::string& xlabel, const std::string& ylabel) {
  if (series.empty()) throw MissingArtifact("no points to draw");
  double x0 = series[0].x[0], x1 = x0, y0 = series[0].y[0], y1 = y0;
  for (const Curve& c : series)
    for (std::size_t k = 0; k < c.x.size(); ++k) {
      x0 = std::min(x0, c.x[k]);
      x1 = std::max(x1, c.x[k]);
      y0 = std::min(y0, c.y[k]);
      y1 = std::max(y1, c.y[k]);
    }
  if (x1 == x0) { x0 -= 0.5; x1 += 0.5; }
  if (y1 == y0) { y0 -= 0.5; y1 += 0.5; }
  const Frame f{x0, x1, y0, y1};
  std::ofstream out;
  open_svg(out, path);
  for (std::size_t c = 0; c < series.size(); ++c) {
    for (std::size_t k = 0; k < series[c].x.size(); ++k)
      out << "<circle cx=\"" << fmt(f.px(series[c].x[k])) << "\" cy=\""
          << fmt(f.py(series[c].y[k])) << "\" r=\"4\" fill=\"" << kSeriesColor[c % 6]
          << "\"/>\n";
    const double ly = kTop + 16.0 + 16.0 * static_cast<double>(c);
    out << "<circle cx=\"" << fmt(kLeft + 14) << "\" cy=\"" << fmt(ly) << "\" r=\"4\" fill=\""
        << kSeriesColor[c % 6] << "\"/>\n"
        << "<text x=\"" << fmt(kLeft + 24) << "\" y=\"" << fmt(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[c].name << "</text>\n";
  }
  draw_axes(out, f, title, xlabel, ylabel);
  out << "</svg>\n";
}

}  // namespace ratefp
