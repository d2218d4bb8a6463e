#pragma once

#include <span>
#include <string>
#include <vector>

namespace lifshitz {

struct PlotSeries {
  std::vector<double> x;
  std::vector<double> y;
  std::string label;
  bool dashed = false;
  bool markers = false;  // draw points instead of a line
};

struct PlotAxes {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 640;
  int height = 420;
};

// Self-contained SVG with one polyline (or marker group) per series and a
// legend. Throws Error(empty_series) when there is no series or a series has
// fewer than two points, and Error(invalid_argument) for non-finite data or
// non-positive values on a log axis.
std::string emit_plot(std::span<const PlotSeries> series, const PlotAxes& axes);

}  // namespace lifshitz
