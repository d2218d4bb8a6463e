#include "lifshitz/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "lifshitz/error.hpp"
#include "lifshitz/table.hpp"

namespace lifshitz {

namespace {

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string coord(double v) {
  const double rounded = std::round(v * 100.0) / 100.0;
  return format_number(rounded);
}

struct Axis {
  double lo;
  double hi;
  bool log;

  double transform(double v) const { return log ? std::log10(v) : v; }
};

Axis make_axis(const std::vector<double>& values, bool log) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values) {
    const double t = log ? std::log10(v) : v;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
    lo -= 0.5;
    hi += 0.5;
  }
  if (log) {
    lo = std::floor(lo);
    hi = std::ceil(hi);
  }
  return {lo, hi, log};
}

// Tick positions in transformed coordinates.
std::vector<double> ticks(const Axis& axis) {
  std::vector<double> out;
  if (axis.log) {
    const double step = std::max(1.0, std::ceil((axis.hi - axis.lo) / 8.0));
    for (double t = axis.lo; t <= axis.hi + 1e-9; t += step) out.push_back(t);
    return out;
  }
  const double raw = (axis.hi - axis.lo) / 5.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  double step = magnitude;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * magnitude;
    if (step >= raw) break;
  }
  for (double t = std::ceil(axis.lo / step) * step; t <= axis.hi + 1e-9 * step; t += step) {
    out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return out;
}

std::string tick_label(const Axis& axis, double t) {
  return axis.log ? "1e" + format_number(t) : format_number(t);
}

}  // namespace

std::string emit_plot(std::span<const PlotSeries> series, const PlotAxes& axes) {
  if (series.empty()) throw Error(ErrorCode::empty_series, "plot needs at least one series");
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw Error(ErrorCode::invalid_argument, "series '" + s.label + "' x/y lengths differ");
    if (s.x.size() < 2) throw Error(ErrorCode::empty_series, "series '" + s.label + "' has fewer than two points");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        throw Error(ErrorCode::invalid_argument, "series '" + s.label + "' has a non-finite point");
      }
      if ((axes.log_x && s.x[i] <= 0.0) || (axes.log_y && s.y[i] <= 0.0)) {
        throw Error(ErrorCode::invalid_argument, "series '" + s.label + "' has a non-positive value on a log axis");
      }
    }
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
  }
  if (axes.width < 300 || axes.height < 200) throw Error(ErrorCode::invalid_argument, "plot is too small");

  const Axis ax = make_axis(xs, axes.log_x);
  const Axis ay = make_axis(ys, axes.log_y);
  const double plot_w = axes.width - kLeft - kRight;
  const double plot_h = axes.height - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (ax.transform(v) - ax.lo) / (ax.hi - ax.lo) * plot_w; };
  auto py = [&](double v) { return kTop + plot_h - (ay.transform(v) - ay.lo) / (ay.hi - ay.lo) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << axes.width << "\" height=\"" << axes.height
      << "\" viewBox=\"0 0 " << axes.width << ' ' << axes.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!axes.title.empty()) {
    svg << "<text x=\"" << coord(kLeft + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(axes.title) << "</text>\n";
  }
  svg << "<rect x=\"" << coord(kLeft) << "\" y=\"" << coord(kTop) << "\" width=\"" << coord(plot_w) << "\" height=\""
      << coord(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ticks(ax)) {
    const double x = kLeft + (t - ax.lo) / (ax.hi - ax.lo) * plot_w;
    svg << "<line x1=\"" << coord(x) << "\" y1=\"" << coord(kTop + plot_h) << "\" x2=\"" << coord(x) << "\" y2=\""
        << coord(kTop + plot_h + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << coord(x) << "\" y=\"" << coord(kTop + plot_h + 18) << "\" text-anchor=\"middle\">"
        << tick_label(ax, t) << "</text>\n";
  }
  for (double t : ticks(ay)) {
    const double y = kTop + plot_h - (t - ay.lo) / (ay.hi - ay.lo) * plot_h;
    svg << "<line x1=\"" << coord(kLeft - 5) << "\" y1=\"" << coord(y) << "\" x2=\"" << coord(kLeft) << "\" y2=\""
        << coord(y) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << coord(kLeft - 8) << "\" y=\"" << coord(y + 4) << "\" text-anchor=\"end\">"
        << tick_label(ay, t) << "</text>\n";
  }
  if (!axes.x_label.empty()) {
    svg << "<text x=\"" << coord(kLeft + plot_w / 2) << "\" y=\"" << coord(axes.height - 10.0)
        << "\" text-anchor=\"middle\">" << escape(axes.x_label) << "</text>\n";
  }
  if (!axes.y_label.empty()) {
    svg << "<text x=\"16\" y=\"" << coord(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << coord(kTop + plot_h / 2) << ")\">" << escape(axes.y_label) << "</text>\n";
  }

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kPalette[i % kPalette.size()];
    if (s.markers) {
      svg << "<g fill=\"" << color << "\">\n";
      for (std::size_t j = 0; j < s.x.size(); ++j) {
        svg << "<circle cx=\"" << coord(px(s.x[j])) << "\" cy=\"" << coord(py(s.y[j])) << "\" r=\"3\"/>\n";
      }
      svg << "</g>\n";
    } else {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
      if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
      svg << " points=\"";
      for (std::size_t j = 0; j < s.x.size(); ++j) {
        svg << (j ? " " : "") << coord(px(s.x[j])) << ',' << coord(py(s.y[j]));
      }
      svg << "\"/>\n";
    }
    const double ly = kTop + 10.0 + 18.0 * static_cast<double>(i);
    const double lx = kLeft + plot_w + 10.0;
    svg << "<line x1=\"" << coord(lx) << "\" y1=\"" << coord(ly) << "\" x2=\"" << coord(lx + 20) << "\" y2=\""
        << coord(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "")
        << "/>\n";
    svg << "<text x=\"" << coord(lx + 25) << "\" y=\"" << coord(ly + 4) << "\">" << escape(s.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace lifshitz
