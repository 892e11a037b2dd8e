#pragma once

// Bare-bones SVG line plot: axes, tick labels at the ends, one polyline per
// series.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "vtmap/harness/record.hpp"

namespace vtmap::harness {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool dashed = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
};

inline void write_svg(std::ostream& out, const PlotSpec& spec, const std::vector<Series>& series) {
  constexpr double kW = 640, kH = 420, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
  auto ty = [&](double y) { return spec.log_y ? std::log10(y) : y; };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      if (spec.log_y && !(y > 0.0)) continue;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, ty(y));
      y1 = std::max(y1, ty(y));
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  if (!std::isfinite(x0)) x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;

  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * (kW - kLeft - kRight); };
  auto py = [&](double y) { return kH - kBottom - (ty(y) - y0) / (y1 - y0) * (kH - kTop - kBottom); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << spec.title
      << "</text>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kH - kBottom << "\" x2=\"" << kW - kRight << "\" y2=\""
      << kH - kBottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kH - kBottom
      << "\" stroke=\"black\"/>\n";
  const std::string y_lo = spec.log_y ? "1e" + fmt(std::floor(y0 * 100) / 100) : fmt(y0);
  const std::string y_hi = spec.log_y ? "1e" + fmt(std::ceil(y1 * 100) / 100) : fmt(y1);
  out << "<text x=\"" << kLeft << "\" y=\"" << kH - kBottom + 16 << "\" font-size=\"11\">" << fmt(x0)
      << "</text>\n";
  out << "<text x=\"" << kW - kRight << "\" y=\"" << kH - kBottom + 16
      << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(x1) << "</text>\n";
  out << "<text x=\"" << kLeft - 4 << "\" y=\"" << kH - kBottom << "\" text-anchor=\"end\" font-size=\"11\">"
      << y_lo << "</text>\n";
  out << "<text x=\"" << kLeft - 4 << "\" y=\"" << kTop + 8 << "\" text-anchor=\"end\" font-size=\"11\">"
      << y_hi << "</text>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\" font-size=\"12\">"
      << spec.x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << kH / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 " << kH / 2
      << ")\" text-anchor=\"middle\">" << spec.y_label << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = colors[i % std::size(colors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\"" << (series[i].dashed ? " stroke-dasharray=\"6 4\"" : "")
        << " points=\"";
    bool first = true;
    for (auto [x, y] : series[i].points) {
      if (spec.log_y && !(y > 0.0)) continue;
      out << (first ? "" : " ") << fmt(std::round(px(x) * 100) / 100) << ',' << fmt(std::round(py(y) * 100) / 100);
      first = false;
    }
    out << "\"/>\n";
    out << "<text x=\"" << kW - kRight - 4 << "\" y=\"" << kTop + 14 * (i + 1)
        << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << color << "\">" << series[i].label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace vtmap::harness
