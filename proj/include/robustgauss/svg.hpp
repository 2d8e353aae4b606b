#pragma once

#include <string>
#include <utility>
#include <vector>

namespace robustgauss {

/// Minimal static plot writer: log-log panels with decade ticks, polyline
/// series, and a legend. No external plotting dependency.
struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;  // (x, y), both must be > 0
};

struct SvgPanel {
  std::string title;
  std::vector<SvgSeries> series;
};

std::string render_loglog_panels(const std::vector<SvgPanel>& panels, const std::string& x_label,
                                 const std::string& y_label);

}  // namespace robustgauss
