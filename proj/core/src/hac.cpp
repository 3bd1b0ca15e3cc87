#include "lmtest/hac.hpp"

#include <cmath>
#include <string>

#include "lmtest/errors.hpp"

namespace lmtest {

AcvfTable acvf(const TimeSeries& a, const TimeSeries& b, int q,
               std::optional<std::pair<double, double>> known_means) {
  const std::size_t n = a.size();
  if (b.size() != n) throw invalid_input("acvf: series lengths differ");
  if (q < 0) throw invalid_input("acvf: negative bandwidth");
  if (static_cast<std::size_t>(q) >= n)
    throw bandwidth_too_large("acvf: q = " + std::to_string(q) +
                              " >= n = " + std::to_string(n));

  const double mu_a = known_means ? known_means->first : a.mean();
  const double mu_b = known_means ? known_means->second : b.mean();

  AcvfTable table;
  table.q = q;
  table.centered = !known_means.has_value();
  table.values.assign(2 * static_cast<std::size_t>(q) + 1, 0.0);

  for (int h = 0; h <= q; ++h) {
    // h >= 0: sum_{t=1}^{n-h} (a_t - mu_a)(b_{t+h} - mu_b)
    double pos = 0.0;
    // h <= 0: sum_{t=1-h}^{n} (a_t - mu_a)(b_{t+h} - mu_b), written for -h
    double neg = 0.0;
    const std::size_t hh = static_cast<std::size_t>(h);
    for (std::size_t t = 0; t + hh < n; ++t) {
      pos += (a[t] - mu_a) * (b[t + hh] - mu_b);
      neg += (a[t + hh] - mu_a) * (b[t] - mu_b);
    }
    table.values[static_cast<std::size_t>(q + h)] = pos / static_cast<double>(n);
    table.values[static_cast<std::size_t>(q - h)] = neg / static_cast<double>(n);
  }
  return table;
}

HacEstimate bartlett_hac(const AcvfTable& table) {
  const int q = table.q;
  double s = table.at(0);
  for (int h = 1; h <= q; ++h) {
    const double w = 1.0 - static_cast<double>(h) / (q + 1.0);
    s += w * (table.at(h) + table.at(-h));
  }
  return {s, q, table.centered};
}

HacEstimate bartlett_hac(const TimeSeries& a, const TimeSeries& b, int q,
                         std::optional<std::pair<double, double>> known_means) {
  return bartlett_hac(acvf(a, b, q, known_means));
}

HacEstimate residual_hac(const HacEstimate& s11, const HacEstimate& s12,
                         const HacEstimate& s22) {
  if (s11.q != s12.q || s12.q != s22.q)
    throw invalid_input("residual_hac: mismatched bandwidths");
  if (s22.value <= 0.0)
    throw degenerate_denominator("residual_hac: S22 <= 0");
  const double resid = s11.value - s12.value * s12.value / s22.value;
  if (resid <= kResidualEpsilon * s11.value)
    throw degenerate_residual(
        "residual_hac: residual long-run variance is numerically zero "
        "(long-run collinear series)");
  return {resid, s11.q, s11.centered};
}

BetaRho beta_rho_hat(const HacEstimate& s11, const HacEstimate& s12,
                     const HacEstimate& s22) {
  if (s11.value <= 0.0 || s22.value <= 0.0)
    throw degenerate_denominator("beta_rho_hat: nonpositive long-run variance");
  const double beta = s12.value / s22.value;
  const double rho = beta * std::sqrt(s22.value / s11.value);
  return {beta, rho};
}

}  // namespace lmtest
