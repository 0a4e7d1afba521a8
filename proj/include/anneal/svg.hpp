#ifndef ANNEAL_SVG_HPP
#define ANNEAL_SVG_HPP

#include <string>
#include <vector>

namespace anneal {

/// Minimal single-file SVG line chart: axes, one polyline, axis labels.
std::string svg_line_chart(const std::vector<double>& x, const std::vector<double>& y,
                           const std::string& x_label, const std::string& y_label,
                           const std::string& title);

}  // namespace anneal

#endif
