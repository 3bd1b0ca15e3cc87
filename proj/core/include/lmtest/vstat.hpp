#pragma once

#include <optional>
#include <string>

#include "lmtest/series.hpp"

namespace lmtest {

enum class Variant { plain, residualized, residualized_one_sided };

std::string to_string(Variant v);

/// A computed two-sample statistic. For the two-sided variants
/// t_n = ratio1 + ratio2 with ratio2 = 1/ratio1, so t_n >= 2; the one-sided
/// variant carries ratio1 only.
struct TwoSampleStat {
  double t_n = 0.0;
  Variant variant = Variant::plain;
  double ratio1 = 0.0;
  std::optional<double> ratio2;
  int q = 0;
  double beta_hat = 0.0;  // 0 for the plain statistic
  double rho_hat = 0.0;   // 0 for the plain statistic
};

/// Residual series X~1(t) = X1(t) - (S12,q/S22,q) X2(t).
TimeSeries residualize(const BivariatePair& pair, int q);

/// T_n = (V1/S11)/(V2/S22) + (V2/S22)/(V1/S11).
/// Throws degenerate_statistic when a V or S term vanishes.
TwoSampleStat t_plain(const BivariatePair& pair, int q);

/// T~n on the residualized first series; one_sided keeps only the first
/// ratio (T~n+). Throws degenerate_residual / degenerate_statistic.
TwoSampleStat t_residualized(const BivariatePair& pair, int q,
                             bool one_sided = false);

}  // namespace lmtest
