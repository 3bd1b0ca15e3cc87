#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lmtest/series.hpp"

namespace lmtest {

/// Ordinates I(lambda_j) = |sum_t X(t) e^{-it lambda_j}|^2 / (2 pi n) at the
/// Fourier frequencies lambda_j = 2 pi j / n, j = 1..floor(n/2).
struct Periodogram {
  std::vector<double> frequencies;
  std::vector<double> ordinates;
};

/// FFT periodogram of the mean-centered series. Throws invalid_input if n < 8.
Periodogram periodogram(const TimeSeries& s);

enum class DMethod { log_periodogram, local_whittle };

std::string to_string(DMethod m);

struct MemoryEstimate {
  double d_raw = 0.0;      // unclamped estimate, may be negative
  double d_clamped = 0.0;  // clamped to [0, 0.49]
  DMethod method = DMethod::local_whittle;
  int bandwidth_m = 0;     // number of low frequencies used
  double std_error = 0.0;  // asymptotic standard error
};

/// Clamp to the d range the null calibration covers.
double clamp_d(double d);

/// Default number of periodogram ordinates used by estimate_d.
int default_bandwidth_m(std::size_t n);

/// Semiparametric estimate of the memory parameter.
///   log_periodogram: OLS of log I(lambda_j) on -2 log lambda_j, j = 1..m.
///   local_whittle:   argmin of R(d) over [-0.49, 0.99], 200-point grid then
///                    golden-section refinement to 1e-8.
/// Throws invalid_input if n < 128, invalid_bandwidth if m >= n/2 or m < 2,
/// estimation_failed if the optimizer cannot bracket a minimum.
MemoryEstimate estimate_d(const TimeSeries& s,
                          DMethod method = DMethod::local_whittle,
                          std::optional<int> m = {});

/// (d1 + d2)/2 on the clamped estimates, clamped again to [0, 0.49].
double average_d(const MemoryEstimate& e1, const MemoryEstimate& e2);

/// Local-Whittle objective, exposed for the optimizer tests.
double local_whittle_objective(const Periodogram& pg, int m, double d);

}  // namespace lmtest
