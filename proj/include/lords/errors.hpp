#pragma once

#include <stdexcept>
#include <string>

namespace lords {

// Malformed models, configs, or input files. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Structural-model specific validation failure (cycles, bad arities, unknown
// nodes, infeasible standardization).
class ScmError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// An analysis that cannot run on the given data. The CLI maps this to exit
// code 3.
class EstimationError : public std::runtime_error {
public:
  explicit EstimationError(const std::string& what) : std::runtime_error(what) {}
};

// Rank-deficient regression design. Regressing the exposure together with one
// of its deterministic copies lands here; the collinearity is a positivity
// violation, not a numerical accident.
class SingularDesignError : public EstimationError {
public:
  using EstimationError::EstimationError;
};

}  // namespace lords
