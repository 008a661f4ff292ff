#include "freemin/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "freemin/errors.hpp"

namespace freemin {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 72.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 24.0;
constexpr double kMarginBottom = 48.0;
constexpr double kErrorFloor = 1e-16;

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

}  // namespace

std::string render_svg_plot(const EnergyTrace& trace, PlotKind kind) {
  if (trace.energies.empty()) throw std::invalid_argument("emit_svg_plot: empty trace");

  std::vector<double> ys;
  ys.reserve(trace.energies.size());
  if (kind == PlotKind::energy) {
    ys = trace.energies;
  } else {
    for (double e : trace.errors) ys.push_back(std::log10(std::max(e, kErrorFloor)));
  }

  double ymin = *std::min_element(ys.begin(), ys.end());
  double ymax = *std::max_element(ys.begin(), ys.end());
  if (ymax - ymin < 1e-30) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double xmax = static_cast<double>(ys.size() - 1);
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto x_of = [&](double k) {
    return kMarginLeft + (xmax > 0 ? k / xmax : 0.5) * plot_w;
  };
  auto y_of = [&](double v) {
    return kMarginTop + (1.0 - (v - ymin) / (ymax - ymin)) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes
  svg << "  <line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
      << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\"/>\n";
  svg << "  <line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
      << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\"/>\n";

  // Horizontal ticks: 5 evenly spaced values
  for (int t = 0; t <= 4; ++t) {
    double v = ymin + (ymax - ymin) * t / 4.0;
    double y = y_of(v);
    std::string label = kind == PlotKind::error ? ("1e" + short_number(v)) : short_number(v);
    svg << "  <line x1=\"" << kMarginLeft - 4 << "\" y1=\"" << y << "\" x2=\"" << kMarginLeft
        << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
    svg << "  <text x=\"" << kMarginLeft - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << label
        << "</text>\n";
  }
  // Vertical ticks: iterations
  for (int t = 0; t <= 4; ++t) {
    double k = xmax * t / 4.0;
    double x = x_of(k);
    svg << "  <line x1=\"" << x << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << x
        << "\" y2=\"" << kMarginTop + plot_h + 4 << "\" stroke=\"black\"/>\n";
    svg << "  <text x=\"" << x << "\" y=\"" << kMarginTop + plot_h + 18
        << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
        << short_number(k) << "</text>\n";
  }
  svg << "  <text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">iteration"
      << "</text>\n";
  svg << "  <text x=\"16\" y=\"" << kMarginTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\" "
      << "transform=\"rotate(-90 16 " << kMarginTop + plot_h / 2 << ")\">"
      << (kind == PlotKind::energy ? "free energy" : "free energy error (log scale)")
      << "</text>\n";

  svg << "  <polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" points=\"";
  for (size_t k = 0; k < ys.size(); ++k) {
    if (k) svg << ' ';
    svg << x_of(static_cast<double>(k)) << ',' << y_of(ys[k]);
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

void emit_svg_plot(const EnergyTrace& trace, PlotKind kind, const std::string& path) {
  std::string markup = render_svg_plot(trace, kind);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << markup;
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace freemin
