#pragma once

#include <string>
#include <vector>

namespace banditlab {

/// One polyline of a chart: points (x, y) with optional confidence whiskers
/// [ci_low, ci_high] per point (same length as x/y or empty).
struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> ci_low;
  std::vector<double> ci_high;
};

/// Renders a fixed-style line chart to SVG text. The y axis is fixed to
/// [0, 1] (success rates); the x axis spans the data. Output is a pure
/// function of the inputs, so identical inputs give byte-identical SVG.
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<PlotSeries>& series);

}  // namespace banditlab
