#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qclone::plot {

struct Curve {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct Axes {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 0.45;
  std::string x_label = "|z|";
  std::string y_label = "X_min";
};

// Standalone SVG document with linear axes, ticks, one polyline per curve
// and a legend. Points outside the axes are clipped.
std::string render_svg(const std::vector<Curve>& curves, const Axes& axes = {});

}  // namespace qclone::plot
