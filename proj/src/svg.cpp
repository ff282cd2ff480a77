#include "banditlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace banditlab {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 440;
constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 56;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

}  // namespace

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<PlotSeries>& series) {
  double x_min = 0.0, x_max = 1.0;
  bool have_x = false;
  for (const PlotSeries& s : series) {
    for (double x : s.x) {
      if (!have_x) {
        x_min = x_max = x;
        have_x = true;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
      }
    }
  }
  if (x_max == x_min) {
    x_min -= 1.0;
    x_max += 1.0;
  }

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto sx = [&](double x) { return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return kMarginTop + (1.0 - y) * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

  // Axes and gridlines; y is the success-rate scale [0,1].
  out << "<g stroke=\"#333\" stroke-width=\"1\" fill=\"none\">\n";
  out << "<path d=\"M" << fmt(kMarginLeft) << ' ' << fmt(sy(0.0)) << " L" << fmt(sx(x_max))
      << ' ' << fmt(sy(0.0)) << "\"/>\n";
  out << "<path d=\"M" << fmt(kMarginLeft) << ' ' << fmt(sy(0.0)) << " L" << fmt(kMarginLeft)
      << ' ' << fmt(sy(1.0)) << "\"/>\n";
  out << "</g>\n";
  for (int i = 0; i <= 5; ++i) {
    const double y = i / 5.0;
    out << "<line x1=\"" << fmt(kMarginLeft) << "\" y1=\"" << fmt(sy(y)) << "\" x2=\""
        << fmt(sx(x_max)) << "\" y2=\"" << fmt(sy(y))
        << "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
    out << "<text x=\"" << fmt(kMarginLeft - 8) << "\" y=\"" << fmt(sy(y) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(y)
        << "</text>\n";
  }

  // x ticks at the distinct data abscissae (sweeps are small grids).
  std::vector<double> ticks;
  for (const PlotSeries& s : series) ticks.insert(ticks.end(), s.x.begin(), s.x.end());
  std::sort(ticks.begin(), ticks.end());
  ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());
  if (ticks.size() > 12) {  // fall back to 6 evenly spaced ticks
    std::vector<double> coarse;
    for (int i = 0; i <= 5; ++i) coarse.push_back(x_min + (x_max - x_min) * i / 5.0);
    ticks = coarse;
  }
  for (double x : ticks) {
    out << "<line x1=\"" << fmt(sx(x)) << "\" y1=\"" << fmt(sy(0.0)) << "\" x2=\"" << fmt(sx(x))
        << "\" y2=\"" << fmt(sy(0.0) + 5) << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << fmt(sx(x)) << "\" y=\"" << fmt(sy(0.0) + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(x)
        << "</text>\n";
  }
  out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
      << "</text>\n";
  out << "<text x=\"18\" y=\"" << kMarginTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << kMarginTop + plot_h / 2 << ")\">" << y_label
      << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const PlotSeries& s = series[k];
    const char* color = kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
    if (s.ci_low.size() == s.x.size() && s.ci_high.size() == s.x.size()) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        out << "<line x1=\"" << fmt(sx(s.x[i])) << "\" y1=\"" << fmt(sy(s.ci_low[i]))
            << "\" x2=\"" << fmt(sx(s.x[i])) << "\" y2=\"" << fmt(sy(s.ci_high[i]))
            << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
      }
    }
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i > 0) out << ' ';
      out << fmt(sx(s.x[i])) << ',' << fmt(sy(s.y[i]));
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out << "<circle cx=\"" << fmt(sx(s.x[i])) << "\" cy=\"" << fmt(sy(s.y[i]))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double legend_y = kMarginTop + 14.0 + 16.0 * k;
    out << "<line x1=\"" << fmt(kMarginLeft + plot_w - 120) << "\" y1=\"" << fmt(legend_y - 4)
        << "\" x2=\"" << fmt(kMarginLeft + plot_w - 100) << "\" y2=\"" << fmt(legend_y - 4)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt(kMarginLeft + plot_w - 94) << "\" y=\"" << fmt(legend_y)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace banditlab
