#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ratelab/errors.hpp"

namespace ratelab::cli {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string label(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::string curve_svg(const std::string& model, const RateCurve& curve) {
  if (curve.points.size() < 2) throw ConfigError("a plot needs at least two points");

  constexpr double width = 640;
  constexpr double height = 440;
  constexpr double ml = 70;   // margins
  constexpr double mr = 20;
  constexpr double mt = 40;
  constexpr double mb = 55;

  std::vector<double> xs;
  std::vector<double> ys;
  for (const RatePoint& p : curve.points) {
    xs.push_back(std::log10(static_cast<double>(p.n)));
    ys.push_back(std::log10(p.radius_q90_median));
  }
  double x_lo = *std::min_element(xs.begin(), xs.end());
  double x_hi = *std::max_element(xs.begin(), xs.end());
  double y_lo = *std::min_element(ys.begin(), ys.end());
  double y_hi = *std::max_element(ys.begin(), ys.end());
  double x_pad = 0.06 * std::max(x_hi - x_lo, 1e-9);
  double y_pad = 0.08 * std::max(y_hi - y_lo, 1e-9);
  x_lo -= x_pad;
  x_hi += x_pad;
  y_lo -= y_pad;
  y_hi += y_pad;

  auto sx = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr); };
  auto sy = [&](double y) { return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb); };

  // The slope is scale free, so it carries from natural logs to base 10;
  // anchor the fitted line at the mean residual and the predicted one at
  // the first point.
  double fit_b = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) fit_b += ys[i] - curve.slope * xs[i];
  fit_b /= static_cast<double>(xs.size());
  double pred_b = ys.front() - curve.predicted * xs.front();

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(width / 2) << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"monospace\" font-size=\"15\">"
      << model << " posterior radius (q90 median)</text>\n";

  // Axes.
  svg << "<line x1=\"" << num(ml) << "\" y1=\"" << num(height - mb) << "\" x2=\""
      << num(width - mr) << "\" y2=\"" << num(height - mb)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "<line x1=\"" << num(ml) << "\" y1=\"" << num(mt) << "\" x2=\"" << num(ml)
      << "\" y2=\"" << num(height - mb) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "<text x=\"" << num((ml + width - mr) / 2) << "\" y=\"" << num(height - 14)
      << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">log10 n</text>\n";
  svg << "<text x=\"18\" y=\"" << num((mt + height - mb) / 2)
      << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\" "
         "transform=\"rotate(-90 18 "
      << num((mt + height - mb) / 2) << ")\">log10 radius</text>\n";

  // Tick marks at the data abscissae and three y levels.
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double px = sx(xs[i]);
    svg << "<line x1=\"" << num(px) << "\" y1=\"" << num(height - mb) << "\" x2=\"" << num(px)
        << "\" y2=\"" << num(height - mb + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(px) << "\" y=\"" << num(height - mb + 20)
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">"
        << curve.points[i].n << "</text>\n";
  }
  for (int k = 0; k <= 2; ++k) {
    double y = y_lo + (y_hi - y_lo) * k / 2.0;
    double py = sy(y);
    svg << "<line x1=\"" << num(ml - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(ml)
        << "\" y2=\"" << num(py) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(ml - 9) << "\" y=\"" << num(py + 4)
        << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" << label(y)
        << "</text>\n";
  }

  // Predicted-exponent line through the first point, then the fitted line.
  svg << "<line x1=\"" << num(sx(x_lo)) << "\" y1=\"" << num(sy(curve.predicted * x_lo + pred_b))
      << "\" x2=\"" << num(sx(x_hi)) << "\" y2=\"" << num(sy(curve.predicted * x_hi + pred_b))
      << "\" stroke=\"#888888\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
  svg << "<line x1=\"" << num(sx(x_lo)) << "\" y1=\"" << num(sy(curve.slope * x_lo + fit_b))
      << "\" x2=\"" << num(sx(x_hi)) << "\" y2=\"" << num(sy(curve.slope * x_hi + fit_b))
      << "\" stroke=\"#1f4e9c\" stroke-width=\"1.5\"/>\n";

  for (std::size_t i = 0; i < xs.size(); ++i) {
    svg << "<circle cx=\"" << num(sx(xs[i])) << "\" cy=\"" << num(sy(ys[i]))
        << "\" r=\"4\" fill=\"#c03020\"/>\n";
  }

  svg << "<text x=\"" << num(width - mr) << "\" y=\"" << num(mt - 6)
      << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\">slope "
      << label(curve.slope) << " (predicted " << label(curve.predicted) << ")</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
}

}  // namespace ratelab::cli
