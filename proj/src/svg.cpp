#include "robustgauss/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace robustgauss {

namespace {

constexpr double kPanelW = 300.0;
constexpr double kPanelH = 280.0;
constexpr double kMarginL = 64.0;
constexpr double kMarginR = 16.0;
constexpr double kMarginT = 36.0;
constexpr double kMarginB = 52.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(int decade) {
  char buf[32];
  if (decade >= -3 && decade <= 4) {
    std::snprintf(buf, sizeof(buf), "%g", std::pow(10.0, decade));
  } else {
    std::snprintf(buf, sizeof(buf), "1e%d", decade);
  }
  return buf;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;
  double span() const { return hi > lo ? hi - lo : 1.0; }
};

Range log_range(const std::vector<SvgPanel>& panels, bool x_axis) {
  Range r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& panel : panels) {
    for (const auto& s : panel.series) {
      for (const auto& [x, y] : s.points) {
        const double v = x_axis ? x : y;
        if (v > 0.0) {
          r.lo = std::min(r.lo, std::log10(v));
          r.hi = std::max(r.hi, std::log10(v));
        }
      }
    }
  }
  if (!std::isfinite(r.lo)) return Range{0.0, 1.0};
  if (r.hi - r.lo < 0.1) {
    r.lo -= 0.5;
    r.hi += 0.5;
  }
  const double pad = 0.04 * (r.hi - r.lo);
  return Range{r.lo - pad, r.hi + pad};
}

}  // namespace

std::string render_loglog_panels(const std::vector<SvgPanel>& panels, const std::string& x_label,
                                 const std::string& y_label) {
  const std::size_t np = std::max<std::size_t>(panels.size(), 1);
  const double width = kMarginL + np * kPanelW + (np - 1) * 24.0 + kMarginR;
  const double height = kMarginT + kPanelH + kMarginB;
  const Range xr = log_range(panels, true);
  const Range yr = log_range(panels, false);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

  for (std::size_t pi = 0; pi < panels.size(); ++pi) {
    const SvgPanel& panel = panels[pi];
    const double x0 = kMarginL + pi * (kPanelW + 24.0);
    const double y0 = kMarginT;
    auto px = [&](double lx) { return x0 + (lx - xr.lo) / xr.span() * kPanelW; };
    auto py = [&](double ly) { return y0 + kPanelH - (ly - yr.lo) / yr.span() * kPanelH; };

    svg << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << kPanelW << "\" height=\""
        << kPanelH << "\" fill=\"none\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << num(x0 + kPanelW / 2) << "\" y=\"" << num(y0 - 10)
        << "\" text-anchor=\"middle\" font-weight=\"bold\">" << panel.title << "</text>\n";

    for (int dec = static_cast<int>(std::ceil(xr.lo)); dec <= static_cast<int>(std::floor(xr.hi)); ++dec) {
      const double gx = px(dec);
      svg << "<line x1=\"" << num(gx) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(gx) << "\" y2=\""
          << num(y0 + kPanelH) << "\" stroke=\"#ddd\"/>\n";
      svg << "<text x=\"" << num(gx) << "\" y=\"" << num(y0 + kPanelH + 16) << "\" text-anchor=\"middle\">"
          << tick_label(dec) << "</text>\n";
    }
    for (int dec = static_cast<int>(std::ceil(yr.lo)); dec <= static_cast<int>(std::floor(yr.hi)); ++dec) {
      const double gy = py(dec);
      svg << "<line x1=\"" << num(x0) << "\" y1=\"" << num(gy) << "\" x2=\"" << num(x0 + kPanelW)
          << "\" y2=\"" << num(gy) << "\" stroke=\"#ddd\"/>\n";
      if (pi == 0) {
        svg << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(gy + 4) << "\" text-anchor=\"end\">"
            << tick_label(dec) << "</text>\n";
      }
    }

    for (std::size_t si = 0; si < panel.series.size(); ++si) {
      const SvgSeries& s = panel.series[si];
      svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points) {
        if (x <= 0.0 || y <= 0.0) continue;  // not representable on log axes
        svg << num(px(std::log10(x))) << ',' << num(py(std::log10(y))) << ' ';
      }
      svg << "\"/>\n";
      // Legend entry, top-right of the panel.
      const double lx = x0 + kPanelW - 118.0;
      const double ly = y0 + 14.0 + 16.0 * si;
      svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 20)
          << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"/>\n";
      svg << "<text x=\"" << num(lx + 26) << "\" y=\"" << num(ly) << "\">" << s.label << "</text>\n";
    }
  }

  svg << "<text x=\"" << num(width / 2) << "\" y=\"" << num(height - 10) << "\" text-anchor=\"middle\">"
      << x_label << "</text>\n";
  svg << "<text x=\"16\" y=\"" << num(kMarginT + kPanelH / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << num(kMarginT + kPanelH / 2) << ")\">" << y_label << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace robustgauss
