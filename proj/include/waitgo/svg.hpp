#pragma once

#include <string>
#include <vector>

namespace waitgo {

// Minimal self-contained SVG line charts for experiment output.
struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y), sorted by x
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 860;
  int height = 480;
};

std::string render_line_chart(const ChartSpec& spec,
                              const std::vector<ChartSeries>& series);

}  // namespace waitgo
