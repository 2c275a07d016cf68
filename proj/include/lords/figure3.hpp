#pragma once

#include <array>
#include <string>
#include <vector>

#include "lords/dataset.hpp"

namespace lords {

struct EllipseSpec {
  std::array<double, 2> center{};                    // (y0, y1) kg
  std::array<double, 4> covariance{};                // row-major 2x2 sample covariance
  double coverage_level = 0.995;
  std::vector<std::array<double, 2>> boundary;       // closed polyline, first == last
};

struct DensityCurve {
  std::vector<double> grid;     // kg
  std::vector<double> density;  // per kg
  double bandwidth = 0.0;
};

struct RegLine {
  double slope = 0.0;
  double intercept = 0.0;
};

// Everything needed to draw the baseline-versus-follow-up picture: one group
// per sex with scatter points, a 99.5% normal-theory ellipse from the sample
// moments, kernel density estimates of each margin, and the within-group
// regression line. The identity line marks zero change.
struct Figure3Bundle {
  struct Group {
    std::string label;  // "girl" or "boy"
    std::vector<std::array<double, 2>> points;  // (y0, y1) kg
    EllipseSpec ellipse;
    DensityCurve density_y0, density_y1;
    RegLine regline;
  };
  Group girls, boys;
  bool identity_line = true;
};

Figure3Bundle figure3_data(const Dataset& ds);

// Fraction of the group's points whose Mahalanobis distance (under the sample
// moments) is inside the ellipse radius.
double ellipse_coverage(const Figure3Bundle::Group& group);

// Trapezoid integral of a density curve over its grid.
double density_integral(const DensityCurve& curve);

// Self-contained SVG. Every scatter point, ellipse, density curve, regression
// line and the identity line is one <path> element; rendering is byte-stable
// for identical input.
std::string render_svg(const Figure3Bundle& bundle);

}  // namespace lords
