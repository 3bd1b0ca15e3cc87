#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lmtest/series.hpp"

namespace lmtest {

/// Truncated-sum sample (cross-)autocovariances on lags -q..q, divisor n.
/// Negative lags come from the second branch of the definition, not from
/// symmetry: cross-covariances are not symmetric in h.
struct AcvfTable {
  int q = 0;
  std::vector<double> values;  // index h + q, h in [-q, q]
  bool centered = true;        // sample-mean vs known-mean variant

  double at(int h) const { return values[static_cast<std::size_t>(h + q)]; }
};

/// Computes gamma_hat (centered) or gamma_circ (known means supplied).
/// Throws bandwidth_too_large if q >= n, invalid_input on length mismatch.
AcvfTable acvf(const TimeSeries& a, const TimeSeries& b, int q,
               std::optional<std::pair<double, double>> known_means = {});

/// Bartlett-kernel long-run (co)variance S_q with its bandwidth.
struct HacEstimate {
  double value = 0.0;
  int q = 0;
  bool centered = true;
};

/// S = sum_{|h|<=q} (1 - |h|/(q+1)) gamma(h). Nonnegative when a == b.
HacEstimate bartlett_hac(const AcvfTable& table);

/// Convenience: acvf followed by bartlett_hac.
HacEstimate bartlett_hac(const TimeSeries& a, const TimeSeries& b, int q,
                         std::optional<std::pair<double, double>> known_means = {});

/// Residual long-run variance S~11 = S11 - S12^2/S22 of the regression of
/// X1 on X2 at the long-run level. Throws degenerate_denominator if S22 <= 0
/// and degenerate_residual if the residual variance is numerically zero
/// (long-run collinear series).
HacEstimate residual_hac(const HacEstimate& s11, const HacEstimate& s12,
                         const HacEstimate& s22);

struct BetaRho {
  double beta = 0.0;  // S12/S22
  double rho = 0.0;   // beta * sqrt(S22/S11); raw value, |rho|<=1 not enforced
};

/// Least-squares estimates of the long-run regression slope and correlation.
BetaRho beta_rho_hat(const HacEstimate& s11, const HacEstimate& s12,
                     const HacEstimate& s22);

/// Relative threshold below which the residual variance counts as zero.
inline constexpr double kResidualEpsilon = 1e-10;

}  // namespace lmtest
