#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lords::stats {

// Compensated (Kahan) summation so identities that should hold to 1e-8 or
// better are not eroded by naive accumulation on long columns.
double sum(std::span<const double> v);
double mean(std::span<const double> v);

// Sample moments with n-1 denominators.
double variance(std::span<const double> v);
double sd(std::span<const double> v);
double covariance(std::span<const double> a, std::span<const double> b);
double correlation(std::span<const double> a, std::span<const double> b);

std::vector<double> sorted_copy(std::span<const double> v);

// Quantile by linear interpolation between the two closest order statistics
// (h = (n-1)p + 1). Input must already be sorted ascending.
double percentile(std::span<const double> sorted, double p);

}  // namespace lords::stats
