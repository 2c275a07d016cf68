#include "lords/figure3.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "lords/errors.hpp"
#include "lords/stats.hpp"

namespace lords {

namespace {

// chi-square(2 dof) quantile: -2 ln(1 - p)
double chi2_2dof_quantile(double p) { return -2.0 * std::log1p(-p); }

constexpr double kCoverage = 0.995;
constexpr int kEllipseSteps = 180;
constexpr int kGridPoints = 512;

DensityCurve kde(const std::vector<double>& values) {
  const std::size_t n = values.size();
  const double spread_sd = stats::sd(values);
  const auto sorted = stats::sorted_copy(values);
  const double iqr = stats::percentile(sorted, 0.75) - stats::percentile(sorted, 0.25);

  double spread = spread_sd;
  if (iqr > 0.0) spread = std::min(spread_sd, iqr / 1.34);
  if (!(spread > 0.0)) throw EstimationError("density estimate needs non-degenerate spread");

  DensityCurve curve;
  curve.bandwidth = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
  const double h = curve.bandwidth;
  const double lo = sorted.front() - 3.0 * h;
  const double hi = sorted.back() + 3.0 * h;
  const double step = (hi - lo) / static_cast<double>(kGridPoints - 1);
  const double norm = 1.0 / (static_cast<double>(n) * h * std::sqrt(2.0 * M_PI));

  curve.grid.resize(kGridPoints);
  curve.density.resize(kGridPoints);
  for (int g = 0; g < kGridPoints; ++g) {
    const double x = lo + step * g;
    double s = 0.0;
    for (double v : values) {
      const double t = (x - v) / h;
      s += std::exp(-0.5 * t * t);
    }
    curve.grid[g] = x;
    curve.density[g] = s * norm;
  }
  return curve;
}

EllipseSpec ellipse_from_moments(const std::vector<double>& y0, const std::vector<double>& y1) {
  EllipseSpec e;
  e.center = {stats::mean(y0), stats::mean(y1)};
  const double sxx = stats::variance(y0);
  const double syy = stats::variance(y1);
  const double sxy = stats::covariance(y0, y1);
  e.covariance = {sxx, sxy, sxy, syy};
  e.coverage_level = kCoverage;

  if (!(sxx > 0.0) || !(syy - sxy * sxy / sxx > 0.0))
    throw EstimationError("ellipse needs a positive-definite sample covariance");

  // Cholesky of the 2x2 covariance maps the unit circle onto the ellipse.
  const double l11 = std::sqrt(sxx);
  const double l21 = sxy / l11;
  const double l22 = std::sqrt(syy - l21 * l21);
  const double radius = std::sqrt(chi2_2dof_quantile(kCoverage));

  e.boundary.reserve(kEllipseSteps + 1);
  for (int k = 0; k < kEllipseSteps; ++k) {
    const double theta = 2.0 * M_PI * static_cast<double>(k) / kEllipseSteps;
    const double u = radius * std::cos(theta);
    const double v = radius * std::sin(theta);
    e.boundary.push_back({e.center[0] + l11 * u, e.center[1] + l21 * u + l22 * v});
  }
  e.boundary.push_back(e.boundary.front());
  return e;
}

Figure3Bundle::Group make_group(std::string label, std::vector<double> y0,
                                std::vector<double> y1) {
  if (y0.size() < 3)
    throw EstimationError("group '" + label + "' needs at least 3 points");

  Figure3Bundle::Group g;
  g.label = std::move(label);
  g.points.reserve(y0.size());
  for (std::size_t i = 0; i < y0.size(); ++i) g.points.push_back({y0[i], y1[i]});
  g.ellipse = ellipse_from_moments(y0, y1);
  g.density_y0 = kde(y0);
  g.density_y1 = kde(y1);

  const double sxx = stats::variance(y0);
  if (!(sxx > 0.0)) throw EstimationError("regression line needs baseline spread");
  g.regline.slope = stats::covariance(y0, y1) / sxx;
  g.regline.intercept = stats::mean(y1) - g.regline.slope * stats::mean(y0);
  return g;
}

}  // namespace

Figure3Bundle figure3_data(const Dataset& ds) {
  if (ds.units() != Units::natural)
    throw EstimationError("figure data expects a natural-units dataset");
  const auto& x = ds.col("X");
  const auto& y0 = ds.col("Y0");
  const auto& y1 = ds.col("Y1");

  std::vector<double> g0, g1, b0, b1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 1.0) {
      b0.push_back(y0[i]);
      b1.push_back(y1[i]);
    } else if (x[i] == -1.0) {
      g0.push_back(y0[i]);
      g1.push_back(y1[i]);
    } else {
      throw EstimationError("exposure column X must be +1 or -1");
    }
  }

  Figure3Bundle bundle;
  bundle.girls = make_group("girl", std::move(g0), std::move(g1));
  bundle.boys = make_group("boy", std::move(b0), std::move(b1));
  bundle.identity_line = true;
  return bundle;
}

double ellipse_coverage(const Figure3Bundle::Group& group) {
  const auto& cov = group.ellipse.covariance;
  const double det = cov[0] * cov[3] - cov[1] * cov[2];
  if (!(det > 0.0)) throw EstimationError("singular ellipse covariance");
  const double r2 = chi2_2dof_quantile(group.ellipse.coverage_level);

  std::size_t inside = 0;
  for (const auto& p : group.points) {
    const double dx = p[0] - group.ellipse.center[0];
    const double dy = p[1] - group.ellipse.center[1];
    const double d2 = (cov[3] * dx * dx - 2.0 * cov[1] * dx * dy + cov[0] * dy * dy) / det;
    if (d2 <= r2) ++inside;
  }
  if (group.points.empty()) throw EstimationError("coverage of empty group");
  return static_cast<double>(inside) / static_cast<double>(group.points.size());
}

double density_integral(const DensityCurve& curve) {
  double s = 0.0;
  for (std::size_t i = 1; i < curve.grid.size(); ++i)
    s += 0.5 * (curve.density[i] + curve.density[i - 1]) * (curve.grid[i] - curve.grid[i - 1]);
  return s;
}

namespace {

std::string fnum(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

struct Frame {
  double w0, w1;              // shared world range (kg) for both axes
  double px0 = 150, px1 = 740;
  double py0 = 40, py1 = 630;  // screen y grows downward
  double sx(double x) const { return px0 + (x - w0) / (w1 - w0) * (px1 - px0); }
  double sy(double y) const { return py1 - (y - w0) / (w1 - w0) * (py1 - py0); }
};

void path_polyline(std::string& svg, const std::string& cls,
                   const std::vector<std::array<double, 2>>& pts, const Frame& f) {
  if (pts.empty()) return;
  svg += "<path class=\"" + cls + "\" d=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    svg += (i == 0 ? "M" : "L");
    svg += fnum(f.sx(pts[i][0])) + " " + fnum(f.sy(pts[i][1]));
  }
  svg += "\"/>\n";
}

void path_dot(std::string& svg, const std::string& cls, double cx, double cy) {
  svg += "<path class=\"" + cls + "\" d=\"M" + fnum(cx) + " " + fnum(cy) +
         "m-1.4 0a1.4 1.4 0 1 0 2.8 0a1.4 1.4 0 1 0 -2.8 0\"/>\n";
}

}  // namespace

std::string render_svg(const Figure3Bundle& bundle) {
  // Shared world range so the identity line sits on the diagonal.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  auto stretch = [&](double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  for (const auto* g : {&bundle.girls, &bundle.boys}) {
    for (const auto& p : g->points) {
      stretch(p[0]);
      stretch(p[1]);
    }
    for (const auto& p : g->ellipse.boundary) {
      stretch(p[0]);
      stretch(p[1]);
    }
    for (double v : g->density_y0.grid) stretch(v);
    for (double v : g->density_y1.grid) stretch(v);
  }
  if (!(hi > lo)) throw EstimationError("nothing to draw");
  const double pad = 0.04 * (hi - lo);
  Frame f{lo - pad, hi + pad};

  double dmax_y0 = 0.0, dmax_y1 = 0.0;
  for (const auto* g : {&bundle.girls, &bundle.boys}) {
    for (double d : g->density_y0.density) dmax_y0 = std::max(dmax_y0, d);
    for (double d : g->density_y1.density) dmax_y1 = std::max(dmax_y1, d);
  }

  std::string svg;
  svg.reserve(1 << 16);
  svg +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 780 780\" "
      "font-family=\"sans-serif\" font-size=\"13\">\n";
  svg +=
      "<style>\n"
      ".pt{stroke:none;fill-opacity:0.22}\n"
      ".pt.girl{fill:#c2528b}\n"
      ".pt.boy{fill:#2e7d4f}\n"
      ".ln{fill:none;stroke-width:2}\n"
      ".ln.girl{stroke:#c2528b;stroke-dasharray:6 4}\n"
      ".ln.boy{stroke:#2e7d4f}\n"
      ".dy0{fill:none;stroke:#b03a3a;stroke-width:1.5}\n"
      ".dy1{fill:none;stroke:#6b3fa0;stroke-width:1.5}\n"
      ".dy0.girl,.dy1.girl{stroke-dasharray:6 4}\n"
      ".ident{fill:none;stroke:#555;stroke-width:1;stroke-dasharray:2 3}\n"
      ".axis{stroke:#333;stroke-width:1}\n"
      ".tick{stroke:#333;stroke-width:1}\n"
      ".lbl{fill:#333}\n"
      "</style>\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"780\" height=\"780\" fill=\"#ffffff\"/>\n";
  svg += "<clipPath id=\"plot\"><rect x=\"" + fnum(f.px0) + "\" y=\"" + fnum(f.py0) +
         "\" width=\"" + fnum(f.px1 - f.px0) + "\" height=\"" + fnum(f.py1 - f.py0) +
         "\"/></clipPath>\n";

  // frame and ticks
  svg += "<rect x=\"" + fnum(f.px0) + "\" y=\"" + fnum(f.py0) + "\" width=\"" +
         fnum(f.px1 - f.px0) + "\" height=\"" + fnum(f.py1 - f.py0) +
         "\" fill=\"none\" stroke=\"#333\"/>\n";
  const double tick0 = std::ceil(f.w0 / 10.0) * 10.0;
  for (double t = tick0; t <= f.w1; t += 10.0) {
    svg += "<line class=\"tick\" x1=\"" + fnum(f.sx(t)) + "\" y1=\"" + fnum(f.py1) + "\" x2=\"" +
           fnum(f.sx(t)) + "\" y2=\"" + fnum(f.py1 + 5) + "\"/>\n";
    svg += "<text class=\"lbl\" x=\"" + fnum(f.sx(t)) + "\" y=\"" + fnum(f.py1 + 18) +
           "\" text-anchor=\"middle\">" + fnum(t) + "</text>\n";
    svg += "<line class=\"tick\" x1=\"" + fnum(f.px0 - 5) + "\" y1=\"" + fnum(f.sy(t)) +
           "\" x2=\"" + fnum(f.px0) + "\" y2=\"" + fnum(f.sy(t)) + "\"/>\n";
    svg += "<text class=\"lbl\" x=\"" + fnum(f.px0 - 8) + "\" y=\"" + fnum(f.sy(t) + 4) +
           "\" text-anchor=\"end\">" + fnum(t) + "</text>\n";
  }
  svg += "<text class=\"lbl\" x=\"" + fnum((f.px0 + f.px1) / 2) +
         "\" y=\"775\" text-anchor=\"middle\">baseline weight (kg)</text>\n";
  svg += "<text class=\"lbl\" x=\"16\" y=\"" + fnum((f.py0 + f.py1) / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + fnum((f.py0 + f.py1) / 2) +
         ")\">follow-up weight (kg)</text>\n";

  svg += "<g clip-path=\"url(#plot)\">\n";
  for (const auto* g : {&bundle.girls, &bundle.boys})
    for (const auto& p : g->points) path_dot(svg, "pt " + g->label, f.sx(p[0]), f.sy(p[1]));
  if (bundle.identity_line) {
    std::vector<std::array<double, 2>> ident{{f.w0, f.w0}, {f.w1, f.w1}};
    path_polyline(svg, "ident", ident, f);
  }
  for (const auto* g : {&bundle.girls, &bundle.boys}) {
    path_polyline(svg, "ln " + g->label, g->ellipse.boundary, f);
    std::vector<std::array<double, 2>> reg{
        {f.w0, g->regline.intercept + g->regline.slope * f.w0},
        {f.w1, g->regline.intercept + g->regline.slope * f.w1}};
    path_polyline(svg, "ln " + g->label, reg, f);
  }
  svg += "</g>\n";

  // marginal densities: baseline along the bottom, follow-up on the left
  for (const auto* g : {&bundle.girls, &bundle.boys}) {
    if (dmax_y0 > 0.0) {
      std::string d = "<path class=\"dy0 " + g->label + "\" d=\"";
      for (std::size_t i = 0; i < g->density_y0.grid.size(); ++i) {
        d += (i == 0 ? "M" : "L");
        d += fnum(f.sx(g->density_y0.grid[i])) + " " +
             fnum(758.0 - g->density_y0.density[i] / dmax_y0 * 112.0);
      }
      svg += d + "\"/>\n";
    }
    if (dmax_y1 > 0.0) {
      std::string d = "<path class=\"dy1 " + g->label + "\" d=\"";
      for (std::size_t i = 0; i < g->density_y1.grid.size(); ++i) {
        d += (i == 0 ? "M" : "L");
        d += fnum(138.0 - g->density_y1.density[i] / dmax_y1 * 112.0) + " " +
             fnum(f.sy(g->density_y1.grid[i]));
      }
      svg += d + "\"/>\n";
    }
  }

  // legend
  svg += "<line x1=\"170\" y1=\"58\" x2=\"204\" y2=\"58\" stroke=\"#2e7d4f\" stroke-width=\"2\"/>\n";
  svg += "<text class=\"lbl\" x=\"210\" y=\"62\">boys</text>\n";
  svg +=
      "<line x1=\"170\" y1=\"78\" x2=\"204\" y2=\"78\" stroke=\"#c2528b\" stroke-width=\"2\" "
      "stroke-dasharray=\"6 4\"/>\n";
  svg += "<text class=\"lbl\" x=\"210\" y=\"82\">girls</text>\n";

  svg += "</svg>\n";
  return svg;
}

}  // namespace lords
