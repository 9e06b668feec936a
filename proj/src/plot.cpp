#include "qclone/plot.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <string_view>

#include "qclone/errors.hpp"

namespace qclone::plot {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 55.0;

constexpr std::array<std::string_view, 8> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
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

struct Mapper {
  const Axes& ax;
  double px(double x) const {
    return kLeft + (x - ax.x_min) / (ax.x_max - ax.x_min) * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom - (y - ax.y_min) / (ax.y_max - ax.y_min) * (kHeight - kTop - kBottom);
  }
};

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2g", v);
  return buf;
}

}  // namespace

std::string render_svg(const std::vector<Curve>& curves, const Axes& axes) {
  if (!(axes.x_max > axes.x_min) || !(axes.y_max > axes.y_min)) {
    throw DomainError("plot axes must have positive extent");
  }
  const Mapper m{axes};
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<defs><clipPath id=\"plot-area\"><rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) +
         "\" width=\"" + num(kWidth - kLeft - kRight) + "\" height=\"" +
         num(kHeight - kTop - kBottom) + "\"/></clipPath></defs>\n";

  // Frame and ticks.
  svg += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
         num(kWidth - kLeft - kRight) + "\" height=\"" + num(kHeight - kTop - kBottom) + "\"/>\n";
  const int x_ticks = 5, y_ticks = 9;
  for (int i = 0; i <= x_ticks; ++i) {
    const double x = m.px(axes.x_min + (axes.x_max - axes.x_min) * i / x_ticks);
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kHeight - kBottom) + "\" x2=\"" + num(x) +
           "\" y2=\"" + num(kHeight - kBottom + 5) + "\"/>\n";
  }
  for (int i = 0; i <= y_ticks; ++i) {
    const double y = m.py(axes.y_min + (axes.y_max - axes.y_min) * i / y_ticks);
    svg += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(y) + "\"/>\n";
  }
  svg += "</g>\n";

  svg += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  for (int i = 0; i <= x_ticks; ++i) {
    const double v = axes.x_min + (axes.x_max - axes.x_min) * i / x_ticks;
    svg += "<text x=\"" + num(m.px(v)) + "\" y=\"" + num(kHeight - kBottom + 20) +
           "\" text-anchor=\"middle\">" + tick_label(v) + "</text>\n";
  }
  for (int i = 0; i <= y_ticks; ++i) {
    const double v = axes.y_min + (axes.y_max - axes.y_min) * i / y_ticks;
    svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(m.py(v) + 4) +
           "\" text-anchor=\"end\">" + tick_label(v) + "</text>\n";
  }
  svg += "<text x=\"" + num((kLeft + kWidth - kRight) / 2) + "\" y=\"" + num(kHeight - 12) +
         "\" text-anchor=\"middle\">" + xml_escape(axes.x_label) + "</text>\n";
  svg += "<text x=\"18\" y=\"" + num((kTop + kHeight - kBottom) / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         num((kTop + kHeight - kBottom) / 2) + ")\">" + xml_escape(axes.y_label) + "</text>\n";
  svg += "</g>\n";

  svg += "<g fill=\"none\" stroke-width=\"1.5\" clip-path=\"url(#plot-area)\">\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    svg += "<polyline stroke=\"" + std::string(kPalette[c % kPalette.size()]) + "\" points=\"";
    bool first = true;
    for (const auto& [x, y] : curves[c].points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!first) svg += ' ';
      svg += num(m.px(x)) + "," + num(m.py(y));
      first = false;
    }
    svg += "\"/>\n";
  }
  svg += "</g>\n";

  // Legend, top left inside the frame.
  svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const double y = kTop + 18 + 16.0 * static_cast<double>(c);
    const auto color = std::string(kPalette[c % kPalette.size()]);
    svg += "<line x1=\"" + num(kLeft + 12) + "\" y1=\"" + num(y - 4) + "\" x2=\"" +
           num(kLeft + 36) + "\" y2=\"" + num(y - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(kLeft + 42) + "\" y=\"" + num(y) + "\">" +
           xml_escape(curves[c].label) + "</text>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace qclone::plot
