#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lords {

struct FitResult {
  std::map<std::string, double> coefficients;
  std::map<std::string, double> standard_errors;
  double residual_variance = 0.0;
  std::size_t n = 0;

  double coef(const std::string& term) const;
  double se(const std::string& term) const;
};

using NamedColumn = std::pair<std::string, std::span<const double>>;

// Least squares of y on the named terms plus a leading intercept. Uses a
// column-pivoted QR; a rank-deficient design throws SingularDesignError.
// Requires n > number of fitted terms.
FitResult ols(std::span<const double> y, const std::vector<NamedColumn>& terms);

}  // namespace lords
