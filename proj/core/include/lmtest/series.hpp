#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lmtest {

/// One real-valued sample. Immutable after construction; the sample mean is
/// computed once with compensated summation and cached.
class TimeSeries {
 public:
  /// Throws invalid_input if fewer than 2 values or any value is not finite.
  explicit TimeSeries(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double mean() const noexcept { return mean_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  std::vector<double>::const_iterator begin() const { return values_.begin(); }
  std::vector<double>::const_iterator end() const { return values_.end(); }

 private:
  std::vector<double> values_;
  double mean_;
};

/// Two aligned samples of equal length, the test input.
struct BivariatePair {
  TimeSeries x1;
  TimeSeries x2;

  /// Throws invalid_input on length mismatch.
  BivariatePair(TimeSeries first, TimeSeries second);

  std::size_t size() const noexcept { return x1.size(); }
  BivariatePair swapped() const { return {x2, x1}; }
};

/// Centered partial-sum path: sums[k-1] = sum_{t<=k} (X(t) - Xbar).
/// Centering forces the final entry to vanish up to accumulation error.
struct PartialSumPath {
  std::vector<double> sums;
};

PartialSumPath partial_sums(const TimeSeries& s);

/// Empirical variance of the centered partial sums:
///   V = n^-2 sum_k S_k^2 - n^-3 (sum_k S_k)^2,  always >= 0.
double v_statistic(const TimeSeries& s);

/// Compensated (Kahan) running sum; keeps the partial-sum path accurate on
/// long strongly dependent samples where plain accumulation cancels badly.
double kahan_sum(std::span<const double> values);

}  // namespace lmtest
