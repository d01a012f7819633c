#pragma once

// Minimal self-contained SVG line charts for the figure analogues; no
// external plotting dependency.

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace kellysim {

struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;
};

inline void write_svg_chart(std::ostream& out, const std::string& title,
                            const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<SvgSeries>& series) {
  constexpr int kWidth = 760;
  constexpr int kHeight = 460;
  constexpr int kMarginLeft = 64;
  constexpr int kMarginRight = 24;
  constexpr int kMarginTop = 40;
  constexpr int kMarginBottom = 52;

  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (first) {
        x_min = x_max = x;
        y_min = y_max = y;
        first = false;
      }
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto px = [&](double x) {
    return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w;
  };
  const auto py = [&](double y) {
    return kMarginTop + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h;
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << title << "</text>\n";

  // axes with 5 ticks each
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = x_min + (x_max - x_min) * i / 5.0;
    const double fy = y_min + (y_max - y_min) * i / 5.0;
    const double gx = px(fx);
    const double gy = py(fy);
    out << "<line x1=\"" << gx << "\" y1=\"" << kMarginTop << "\" x2=\"" << gx
        << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << gy << "\" x2=\""
        << kMarginLeft + plot_w << "\" y2=\"" << gy
        << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", fx);
    out << "<text x=\"" << gx << "\" y=\"" << kMarginTop + plot_h + 16
        << "\" text-anchor=\"middle\">" << buf << "</text>\n";
    std::snprintf(buf, sizeof(buf), "%.3g", fy);
    out << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << gy + 4
        << "\" text-anchor=\"end\">" << buf << "</text>\n";
  }
  out << "</g>\n";
  out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
      << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : s.points) {
      out << px(x) << ',' << py(y) << ' ';
    }
    out << "\"/>\n";
  }

  // legend, top-right inside the plot
  double ly = kMarginTop + 14;
  for (const auto& s : series) {
    const double lx = kMarginLeft + plot_w - 180;
    out << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 22
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << lx + 28 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label
        << "</text>\n";
    ly += 18;
  }

  out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << kMarginTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 16 "
      << kMarginTop + plot_h / 2 << ")\">" << y_label << "</text>\n";
  out << "</svg>\n";
}

}  // namespace kellysim
