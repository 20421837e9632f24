#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "physinet/errors.hpp"
#include "physinet/trainer.hpp"

namespace physinet {

struct ChartSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<ChartSeries> series;
};

namespace detail {

inline std::string svg_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
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

inline bool plottable(double y, bool log_y) { return std::isfinite(y) && (!log_y || y > 0.0); }

}  // namespace detail

// Fixed 800x500 canvas, 10 intervals per axis, a polyline plus circle
// markers per series and a legend. Non-finite values (and non-positive ones
// on a log axis) are skipped.
inline std::string render_svg(const LineChart& chart) {
  constexpr double kWidth = 800, kHeight = 500;
  constexpr double kLeft = 80, kRight = 160, kTop = 40, kBottom = 60;
  constexpr int kTicks = 10;
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"};

  const auto ty = [&](double y) { return chart.log_y ? std::log10(y) : y; };
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& s : chart.series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !detail::plottable(y, chart.log_y)) continue;
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, ty(y));
      y_max = std::max(y_max, ty(y));
    }
  }
  if (!std::isfinite(x_min)) {
    x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  }
  if (x_max == x_min) x_min -= 0.5, x_max += 0.5;
  if (y_max == y_min) y_min -= 0.5, y_max += 0.5;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  const auto py = [&](double t) { return kTop + plot_h - (t - y_min) / (y_max - y_min) * plot_h; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"500\" "
         "viewBox=\"0 0 800 500\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n"
      << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << detail::xml_escape(chart.title) << "</text>\n";

  out << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
      << kTop + plot_h << "\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h
      << "\"/>\n</g>\n";

  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = x_min + (x_max - x_min) * i / kTicks;
    const double sx = px(fx);
    out << "<line x1=\"" << detail::svg_number(sx) << "\" y1=\"" << kTop + plot_h << "\" x2=\""
        << detail::svg_number(sx) << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << detail::svg_number(sx) << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\">" << detail::tick_label(fx) << "</text>\n";
    const double fy = y_min + (y_max - y_min) * i / kTicks;
    const double sy = py(fy);
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << detail::svg_number(sy) << "\" x2=\"" << kLeft << "\" y2=\""
        << detail::svg_number(sy) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << detail::svg_number(sy + 4) << "\" text-anchor=\"end\">"
        << detail::tick_label(chart.log_y ? std::pow(10.0, fy) : fy) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
      << detail::xml_escape(chart.x_label) << "</text>\n"
      << "<text x=\"20\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << kTop + plot_h / 2 << ")\">" << detail::xml_escape(chart.y_label) << (chart.log_y ? " (log)" : "")
      << "</text>\n</g>\n";

  for (std::size_t k = 0; k < chart.series.size(); ++k) {
    const auto& s = chart.series[k];
    const char* color = kColors[k % std::size(kColors)];
    std::vector<std::pair<double, double>> pts;
    for (const auto& [x, y] : s.points) {
      if (std::isfinite(x) && detail::plottable(y, chart.log_y)) pts.emplace_back(px(x), py(ty(y)));
    }
    out << "<g class=\"series\" data-name=\"" << detail::xml_escape(s.name) << "\">\n";
    if (pts.size() > 1) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        out << (i ? " " : "") << detail::svg_number(pts[i].first) << ',' << detail::svg_number(pts[i].second);
      }
      out << "\"/>\n";
    }
    for (const auto& [sx, sy] : pts) {
      out << "<circle class=\"marker\" cx=\"" << detail::svg_number(sx) << "\" cy=\"" << detail::svg_number(sy)
          << "\" r=\"2\" fill=\"" << color << "\"/>\n";
    }
    out << "</g>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(k);
    out << "<line x1=\"" << kWidth - kRight + 15 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 40
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << kWidth - kRight + 45 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << detail::xml_escape(s.name) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

enum class PlotKind { Mse, WeightRatio };

inline LineChart chart_from_steps(const std::vector<StepRecord>& records, PlotKind kind) {
  LineChart chart;
  chart.x_label = "step";
  if (kind == PlotKind::Mse) {
    chart.title = "Test MSE per step";
    chart.y_label = "MSE";
    chart.log_y = true;
    ChartSeries physinet{"PhysiNet", {}}, neural{"NN only", {}}, physics{"Physics only", {}};
    for (const auto& r : records) {
      const double s = static_cast<double>(r.step);
      physinet.points.emplace_back(s, r.mse_physinet);
      neural.points.emplace_back(s, r.mse_nn_only);
      physics.points.emplace_back(s, r.mse_physics_only);
    }
    chart.series = {physinet, neural, physics};
  } else {
    chart.title = "Weight ratio w_physi / w_nn";
    chart.y_label = "ratio";
    ChartSeries ratio{"w_physi / w_nn", {}};
    for (const auto& r : records) {
      ratio.points.emplace_back(static_cast<double>(r.step),
                                r.weight_ratio.value_or(std::numeric_limits<double>::quiet_NaN()));
    }
    chart.series = {ratio};
  }
  return chart;
}

}  // namespace physinet
