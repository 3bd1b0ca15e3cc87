#pragma once

#include <stdexcept>
#include <string>

namespace lmtest {

/// Base class for all lmtest errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (lengths, ranges, parse failures).
struct invalid_input : error {
  using error::error;
};

/// HAC bandwidth q >= n.
struct bandwidth_too_large : invalid_input {
  using invalid_input::invalid_input;
};

/// Periodogram bandwidth m out of range for the estimator.
struct invalid_bandwidth : invalid_input {
  using invalid_input::invalid_input;
};

/// A variance used as a denominator is not strictly positive.
struct degenerate_denominator : error {
  using error::error;
};

/// Residual long-run variance is numerically zero: the two series are
/// long-run collinear and the residualized statistic is undefined.
struct degenerate_residual : error {
  using error::error;
};

/// A V or S term of a test statistic vanished.
struct degenerate_statistic : error {
  using error::error;
};

/// A fit (AR, regression, optimizer) could not produce a usable estimate.
struct estimation_failed : error {
  using error::error;
};

/// Quadrature or matrix factorization broke down.
struct numerical_failure : error {
  using error::error;
};

}  // namespace lmtest
