#include "lords/ols.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "lords/errors.hpp"

namespace lords {

double FitResult::coef(const std::string& term) const {
  auto it = coefficients.find(term);
  if (it == coefficients.end()) throw EstimationError("no coefficient for term '" + term + "'");
  return it->second;
}

double FitResult::se(const std::string& term) const {
  auto it = standard_errors.find(term);
  if (it == standard_errors.end())
    throw EstimationError("no standard error for term '" + term + "'");
  return it->second;
}

FitResult ols(std::span<const double> y, const std::vector<NamedColumn>& terms) {
  const std::size_t n = y.size();
  const std::size_t p = terms.size() + 1;
  if (n <= p)
    throw EstimationError("ols needs more rows (" + std::to_string(n) + ") than terms (" +
                          std::to_string(p) + ")");
  for (const auto& [name, col] : terms)
    if (col.size() != n)
      throw EstimationError("ols term '" + name + "' has " + std::to_string(col.size()) +
                            " rows, expected " + std::to_string(n));

  Eigen::MatrixXd X(n, p);
  Eigen::VectorXd Y(n);
  for (std::size_t i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    Y(i) = y[i];
  }
  for (std::size_t j = 0; j < terms.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) X(i, j + 1) = terms[j].second[i];

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < static_cast<Eigen::Index>(p)) {
    std::string cols = "intercept";
    for (const auto& [name, col] : terms) cols += ", " + name;
    throw SingularDesignError(
        "design is rank deficient (collinear columns among: " + cols +
        "); with a deterministic copy of the exposure this is a positivity violation");
  }

  const Eigen::VectorXd beta = qr.solve(Y);
  const double rss = (Y - X * beta).squaredNorm();
  const double s2 = rss / static_cast<double>(n - p);

  // X P = Q R  =>  (X'X)^-1 = P (R'R)^-1 P'
  const Eigen::MatrixXd R =
      qr.matrixR().topLeftCorner(p, p).template triangularView<Eigen::Upper>();
  const Eigen::MatrixXd Rinv = R.inverse();
  const Eigen::MatrixXd xtx_inv =
      qr.colsPermutation() * (Rinv * Rinv.transpose()) * qr.colsPermutation().transpose();

  FitResult fit;
  fit.n = n;
  fit.residual_variance = s2;
  auto record = [&](const std::string& name, std::size_t j) {
    fit.coefficients[name] = beta(j);
    fit.standard_errors[name] = std::sqrt(s2 * xtx_inv(j, j));
  };
  record("intercept", 0);
  for (std::size_t j = 0; j < terms.size(); ++j) record(terms[j].first, j + 1);
  return fit;
}

}  // namespace lords
