#pragma once

#include <stdexcept>
#include <string>

namespace bskde {

/// Bad user-supplied input: malformed files, out-of-range values, unknown
/// model or family names. CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical failure: empty admissible candidate set, zero-mass grid,
/// non-finite intermediate. CLI maps this to exit code 3.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Correlation component outside the interval that keeps the Sarmanov
/// bracket nonnegative on the unit square.
struct AdmissibilityError : NumericError {
  using NumericError::NumericError;
};

}  // namespace bskde
