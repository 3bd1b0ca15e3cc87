#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lmtest/memest.hpp"
#include "lmtest/nulldist.hpp"
#include "lmtest/series.hpp"
#include "lmtest/vstat.hpp"

namespace lmtest {

/// Knobs of the full testing pipeline.
struct TestOptions {
  Variant variant = Variant::residualized;
  double alpha = 0.05;
  std::optional<int> q_override;      // skip the adaptive bandwidth
  DMethod estimator = DMethod::local_whittle;
  std::optional<int> estimator_m;     // periodogram band, default n^0.55
  int p_max = 10;                     // AR order cap for the bandwidth rule
  QuantileModel quantiles = QuantileModel::published();
  bool swap_pair = false;             // exchange roles: tests d1 < d2
};

/// Everything the decision depended on, serializable.
struct TestReport {
  Variant variant = Variant::residualized;
  std::size_t n = 0;
  double t_value = 0.0;
  double d_hat_1 = 0.0;   // clamped estimates, order as analyzed
  double d_hat_2 = 0.0;
  double d_hat = 0.0;
  int q_used = 0;
  std::string q_source;   // "user" | "adaptive"
  double beta_hat = 0.0;
  double rho_hat = 0.0;
  double critical_value = 0.0;
  double alpha = 0.05;
  bool reject = false;
  std::string estimator_method;
  bool swapped = false;   // true when x2 was analyzed as the first series
  std::optional<std::uint64_t> seed;  // present for simulated input
  std::vector<std::string> warnings;

  std::string to_json_string() const;
};

/// d estimation -> adaptive bandwidth -> chosen statistic -> quantile
/// lookup -> decision.
TestReport run_two_sample_test(const BivariatePair& pair,
                               const TestOptions& options = {});

}  // namespace lmtest
