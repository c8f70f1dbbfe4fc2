#include "kirimech/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kirimech/errors.hpp"
#include "kirimech/units.hpp"

namespace kirimech {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Round the axis maximum up to 1, 2 or 5 times a power of ten.
double nice_ceiling(double v) {
  if (!(v > 0.0)) return 1.0;
  const double p = std::pow(10.0, std::floor(std::log10(v)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * p >= v) return m * p;
  }
  return 10.0 * p;
}

struct Series {
  const char* name;
  const char* colour;
  double (*value)(const ForceBreakdown&);
};

const std::array<Series, 3> kSeries = {{
    {"F_boundary", "#1f77b4", [](const ForceBreakdown& s) { return s.f_boundary; }},
    {"F_boundary + F_discrete", "#ff7f0e",
     [](const ForceBreakdown& s) { return s.f_boundary + s.f_discrete; }},
    {"F_tensile", "#2ca02c", [](const ForceBreakdown& s) { return s.f_tensile; }},
}};

}  // namespace

std::string render_svg(const ForceCurve& curve) {
  if (curve.samples.empty()) throw InvalidArgument("cannot plot an empty curve");

  double x_max = 0.0;
  double y_max = 0.0;
  for (const ForceBreakdown& s : curve.samples) {
    x_max = std::max(x_max, units::to_mm(s.displacement));
    y_max = std::max(y_max, s.f_tensile);
  }
  x_max = nice_ceiling(x_max);
  y_max = nice_ceiling(y_max);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double mm) { return kLeft + plot_w * mm / x_max; };
  auto py = [&](double n) { return kTop + plot_h * (1.0 - n / y_max); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\""
      << fmt(kHeight) << "\" viewBox=\"0 0 " << fmt(kWidth) << ' ' << fmt(kHeight) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">Sheet "
      << curve.sheet_id << ": tensile force (lower bound)</text>\n";

  // Axes and ticks.
  svg << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
      << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop + plot_h) << "\" x2=\""
      << fmt(kLeft + plot_w) << "\" y2=\"" << fmt(kTop + plot_h) << "\"/>\n"
      << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(kLeft)
      << "\" y2=\"" << fmt(kTop + plot_h) << "\"/>\n"
      << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = x_max * i / kTicks;
    const double yv = y_max * i / kTicks;
    svg << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << fmt(kTop + plot_h + 16)
        << "\" text-anchor=\"middle\">" << label(xv) << "</text>\n"
        << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(py(yv) + 4)
        << "\" text-anchor=\"end\">" << label(yv) << "</text>\n";
  }
  svg << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"" << fmt(kHeight - 10)
      << "\" text-anchor=\"middle\">displacement (mm)</text>\n"
      << "<text x=\"16\" y=\"" << fmt(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << fmt(kTop + plot_h / 2) << ")\">force (N)</text>\n</g>\n";

  for (std::size_t k = 0; k < kSeries.size(); ++k) {
    const Series& series = kSeries[k];
    svg << "<g class=\"series\" data-name=\"" << series.name << "\" stroke=\"" << series.colour
        << "\" fill=\"" << series.colour << "\">\n<polyline fill=\"none\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < curve.samples.size(); ++i) {
      const ForceBreakdown& s = curve.samples[i];
      if (i) svg << ' ';
      svg << fmt(px(units::to_mm(s.displacement))) << ',' << fmt(py(series.value(s)));
    }
    svg << "\"/>\n";
    for (const ForceBreakdown& s : curve.samples) {
      svg << "<circle cx=\"" << fmt(px(units::to_mm(s.displacement))) << "\" cy=\""
          << fmt(py(series.value(s))) << "\" r=\"2.5\"/>\n";
    }
    svg << "</g>\n";
    const double ly = kTop + 14.0 * static_cast<double>(k);
    svg << "<text x=\"" << fmt(kLeft + 10) << "\" y=\"" << fmt(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << series.colour << "\">"
        << series.name << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_svg(const ForceCurve& curve, const std::filesystem::path& path) {
  const std::string text = render_svg(curve);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write SVG to '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing SVG to '" + path.string() + "'");
}

}  // namespace kirimech
