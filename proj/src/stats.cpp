#include "lords/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lords::stats {

double sum(std::span<const double> v) {
  double s = 0.0, c = 0.0;
  for (double x : v) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean of empty range");
  return sum(v) / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
  if (v.size() < 2) throw std::invalid_argument("variance needs at least 2 values");
  const double m = mean(v);
  double s = 0.0, c = 0.0;
  for (double x : v) {
    double d = (x - m) * (x - m) - c;
    double t = s + d;
    c = (t - s) - d;
    s = t;
  }
  return s / static_cast<double>(v.size() - 1);
}

double sd(std::span<const double> v) { return std::sqrt(variance(v)); }

double covariance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("covariance of unequal ranges");
  if (a.size() < 2) throw std::invalid_argument("covariance needs at least 2 values");
  const double ma = mean(a), mb = mean(b);
  double s = 0.0, c = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = (a[i] - ma) * (b[i] - mb) - c;
    double t = s + d;
    c = (t - s) - d;
    s = t;
  }
  return s / static_cast<double>(a.size() - 1);
}

double correlation(std::span<const double> a, std::span<const double> b) {
  const double denom = sd(a) * sd(b);
  if (denom == 0.0) throw std::invalid_argument("correlation with zero-variance input");
  return covariance(a, b) / denom;
}

std::vector<double> sorted_copy(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

double percentile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("percentile of empty range");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("percentile p outside [0,1]");
  if (sorted.size() == 1) return sorted[0];
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted[sorted.size() - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace lords::stats
