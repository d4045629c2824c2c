#pragma once

#include <string>
#include <vector>

namespace signvote::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

// SVG 1.1 document with the panels laid out side by side. The y axis is
// logarithmic when every y value in a panel is positive.
std::string line_chart_svg(const std::vector<Panel>& panels);

}  // namespace signvote::cli
