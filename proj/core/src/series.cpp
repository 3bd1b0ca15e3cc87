#include "lmtest/series.hpp"

#include <cmath>
#include <utility>

#include "lmtest/errors.hpp"

namespace lmtest {

double kahan_sum(std::span<const double> values) {
  double sum = 0.0, carry = 0.0;
  for (double v : values) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

TimeSeries::TimeSeries(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() < 2)
    throw invalid_input("TimeSeries needs at least 2 values");
  for (double v : values_)
    if (!std::isfinite(v)) throw invalid_input("TimeSeries value not finite");
  mean_ = kahan_sum(values_) / static_cast<double>(values_.size());
}

BivariatePair::BivariatePair(TimeSeries first, TimeSeries second)
    : x1(std::move(first)), x2(std::move(second)) {
  if (x1.size() != x2.size())
    throw invalid_input("BivariatePair series lengths differ");
}

PartialSumPath partial_sums(const TimeSeries& s) {
  const double xbar = s.mean();
  std::vector<double> sums(s.size());
  double sum = 0.0, carry = 0.0;
  for (std::size_t t = 0; t < s.size(); ++t) {
    const double y = (s[t] - xbar) - carry;
    const double next = sum + y;
    carry = (next - sum) - y;
    sum = next;
    sums[t] = sum;
  }
  return {std::move(sums)};
}

double v_statistic(const TimeSeries& s) {
  const auto path = partial_sums(s);
  const double n = static_cast<double>(s.size());
  double sq = 0.0;
  for (double v : path.sums) sq += v * v;
  const double total = kahan_sum(path.sums);
  const double v = sq / (n * n) - (total * total) / (n * n * n);
  // the two-term form equals a variance; negative values are pure rounding
  return v > 0.0 ? v : 0.0;
}

}  // namespace lmtest
