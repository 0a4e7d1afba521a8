#include "anneal/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace anneal {

std::string svg_line_chart(const std::vector<double>& x, const std::vector<double>& y,
                           const std::string& x_label, const std::string& y_label,
                           const std::string& title) {
  const int width = 720, height = 480;
  const int left = 70, right = 20, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_min = *std::min_element(x.begin(), x.end());
  double x_max = *std::max_element(x.begin(), x.end());
  double y_min = *std::min_element(y.begin(), y.end());
  double y_max = *std::max_element(y.begin(), y.end());
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  auto px = [&](double v) { return left + (v - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double v) { return top + (y_max - v) / (y_max - y_min) * plot_h; };

  std::ostringstream out;
  out.precision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

  // Axes
  out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\""
      << left + plot_w << "\" y2=\"" << top + plot_h
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";

  // Ticks: 5 per axis with numeric labels.
  for (int i = 0; i <= 4; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 4.0;
    const double yv = y_min + (y_max - y_min) * i / 4.0;
    out << "<line x1=\"" << px(xv) << "\" y1=\"" << top + plot_h << "\" x2=\""
        << px(xv) << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << px(xv) << "\" y=\"" << top + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << xv << "</text>\n"
        << "<line x1=\"" << left - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << left
        << "\" y2=\"" << py(yv) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << left - 8 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << yv << "</text>\n";
  }

  out << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < x.size(); ++i)
    out << px(x[i]) << "," << py(y[i]) << (i + 1 < x.size() ? " " : "");
  out << "\"/>\n";

  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << x_label << "</text>\n"
      << "<text x=\"18\" y=\"" << top + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 " << top + plot_h / 2 << ")\">" << y_label
      << "</text>\n</svg>\n";
  return out.str();
}

}  // namespace anneal
