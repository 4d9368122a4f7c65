#include "waitgo/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace waitgo {

namespace {

constexpr const char* kPalette[] = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2",
};
constexpr int kPaletteSize = static_cast<int>(std::size(kPalette));

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// A readable tick step: 1, 2 or 5 times a power of ten.
double nice_step(double span, int target_ticks) {
  if (span <= 0.0) return 1.0;
  const double raw = span / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double mult : {1.0, 2.0, 5.0, 10.0})
    if (raw <= mult * mag) return mult * mag;
  return 10.0 * mag;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_line_chart(const ChartSpec& spec,
                              const std::vector<ChartSeries>& series) {
  const double margin_left = 70, margin_right = 170, margin_top = 48,
               margin_bottom = 56;
  const double plot_w = spec.width - margin_left - margin_right;
  const double plot_h = spec.height - margin_top - margin_bottom;

  double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
  double min_y = min_x, max_y = -min_x;
  for (const ChartSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      min_x = std::min(min_x, x);
      max_x = std::max(max_x, x);
      min_y = std::min(min_y, y);
      max_y = std::max(max_y, y);
    }
  }
  if (!(min_x < max_x)) { min_x -= 0.5; max_x += 0.5; }
  if (!(min_y < max_y)) { min_y -= 0.5; max_y += 0.5; }
  min_y = std::min(min_y, 0.0);  // anchor rate-style charts at zero
  const double pad_y = 0.05 * (max_y - min_y);
  max_y += pad_y;

  const auto sx = [&](double x) {
    return margin_left + (x - min_x) / (max_x - min_x) * plot_w;
  };
  const auto sy = [&](double y) {
    return margin_top + plot_h - (y - min_y) / (max_y - min_y) * plot_h;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
      << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width
      << " " << spec.height << "\" font-family=\"sans-serif\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << margin_left << "\" y=\"24\" font-size=\"16\">"
      << escape(spec.title) << "</text>\n";

  // Gridlines and axis labels.
  const double y_step = nice_step(max_y - min_y, 6);
  for (double y = std::ceil(min_y / y_step) * y_step; y <= max_y + 1e-12;
       y += y_step) {
    out << "<line x1=\"" << margin_left << "\" y1=\"" << fmt(sy(y)) << "\" x2=\""
        << margin_left + plot_w << "\" y2=\"" << fmt(sy(y))
        << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << margin_left - 8 << "\" y=\"" << fmt(sy(y) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(y) << "</text>\n";
  }
  const double x_step = std::max(1.0, nice_step(max_x - min_x, 10));
  for (double x = std::ceil(min_x / x_step) * x_step; x <= max_x + 1e-12;
       x += x_step) {
    out << "<line x1=\"" << fmt(sx(x)) << "\" y1=\"" << margin_top + plot_h
        << "\" x2=\"" << fmt(sx(x)) << "\" y2=\"" << margin_top + plot_h + 4
        << "\" stroke=\"#555555\"/>\n";
    char label[32];
    std::snprintf(label, sizeof label, "%g", x);
    out << "<text x=\"" << fmt(sx(x)) << "\" y=\"" << margin_top + plot_h + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << label << "</text>\n";
  }
  out << "<rect x=\"" << margin_left << "\" y=\"" << margin_top << "\" width=\""
      << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#555555\"/>\n";
  out << "<text x=\"" << margin_left + plot_w / 2 << "\" y=\""
      << spec.height - 16 << "\" font-size=\"12\" text-anchor=\"middle\">"
      << escape(spec.x_label) << "</text>\n";
  out << "<text x=\"20\" y=\"" << margin_top + plot_h / 2
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << margin_top + plot_h / 2 << ")\">" << escape(spec.y_label)
      << "</text>\n";

  // Series and legend.
  int color_index = 0;
  double legend_y = margin_top + 10;
  for (const ChartSeries& s : series) {
    const char* color = kPalette[color_index % kPaletteSize];
    ++color_index;
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.8\" points=\"";
    for (const auto& [x, y] : s.points)
      out << fmt(sx(x)) << ',' << fmt(sy(y)) << ' ';
    out << "\"/>\n";
    const double lx = margin_left + plot_w + 12;
    out << "<line x1=\"" << lx << "\" y1=\"" << legend_y << "\" x2=\"" << lx + 22
        << "\" y2=\"" << legend_y << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << lx + 28 << "\" y=\"" << legend_y + 4
        << "\" font-size=\"11\">" << escape(s.label) << "</text>\n";
    legend_y += 18;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace waitgo
