#include "signvote/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace signvote::cli {
namespace {

constexpr double kPanelWidth = 480;
constexpr double kPanelHeight = 360;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
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

void render_panel(std::string& svg, const Panel& panel, double origin_x) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : panel.series) {
    for (double v : s.x) xmin = std::min(xmin, v), xmax = std::max(xmax, v);
    for (double v : s.y) {
      if (std::isfinite(v)) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1;
  if (!std::isfinite(ymin)) ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  const bool log_y = ymin > 0;
  auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
  double lo = ty(ymin), hi = ty(ymax);
  if (hi == lo) hi = lo + 1;

  const double plot_w = kPanelWidth - kLeft - kRight;
  const double plot_h = kPanelHeight - kTop - kBottom;
  auto px = [&](double v) { return origin_x + kLeft + (v - xmin) / (xmax - xmin) * plot_w; };
  auto py = [&](double v) { return kTop + (1.0 - (ty(v) - lo) / (hi - lo)) * plot_h; };

  svg += "<g>\n";
  svg += "<text x=\"" + num(origin_x + kPanelWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(panel.title) + "</text>\n";
  svg += "<rect x=\"" + num(origin_x + kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(plot_w) +
         "\" height=\"" + num(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 4; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 4.0;
    svg += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(kTop + plot_h + 16) +
           "\" text-anchor=\"middle\" font-size=\"10\">" + tick_label(xv) + "</text>\n";
    const double yt = lo + (hi - lo) * k / 4.0;
    const double yv = log_y ? std::pow(10.0, yt) : yt;
    svg += "<text x=\"" + num(origin_x + kLeft - 6) + "\" y=\"" + num(py(yv) + 3) +
           "\" text-anchor=\"end\" font-size=\"10\">" + tick_label(yv) + "</text>\n";
  }
  svg += "<text x=\"" + num(origin_x + kLeft + plot_w / 2) + "\" y=\"" + num(kPanelHeight - 12) +
         "\" text-anchor=\"middle\" font-size=\"12\">" + escape(panel.x_label) + "</text>\n";
  svg += "<text x=\"" + num(origin_x + 16) + "\" y=\"" + num(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 " + num(origin_x + 16) + " " +
         num(kTop + plot_h / 2) + ")\">" + escape(panel.y_label) + (log_y ? " (log)" : "") + "</text>\n";

  for (std::size_t i = 0; i < panel.series.size(); ++i) {
    const auto& s = panel.series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    std::string points;
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
      if (!std::isfinite(s.y[k]) || (log_y && s.y[k] <= 0)) continue;
      if (!points.empty()) points += ' ';
      points += num(px(s.x[k])) + "," + num(py(s.y[k]));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + points +
           "\"/>\n";
    const double ly = kTop + 14 + 14.0 * static_cast<double>(i);
    const double lx = origin_x + kLeft + plot_w - 120;
    svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 18) + "\" y2=\"" +
           num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(lx + 22) + "\" y=\"" + num(ly) + "\" font-size=\"10\">" + escape(s.label) +
           "</text>\n";
  }
  svg += "</g>\n";
}

}  // namespace

std::string line_chart_svg(const std::vector<Panel>& panels) {
  const double width = kPanelWidth * static_cast<double>(std::max<std::size_t>(1, panels.size()));
  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) + "\" height=\"" +
         num(kPanelHeight) + "\" viewBox=\"0 0 " + num(width) + " " + num(kPanelHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) render_panel(svg, panels[i], kPanelWidth * static_cast<double>(i));
  svg += "</svg>\n";
  return svg;
}

}  // namespace signvote::cli
