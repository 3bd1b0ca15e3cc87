#include "lmtest/vstat.hpp"

#include "lmtest/errors.hpp"
#include "lmtest/hac.hpp"

namespace lmtest {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::plain:
      return "plain";
    case Variant::residualized:
      return "residualized";
    case Variant::residualized_one_sided:
      return "residualized_one_sided";
  }
  return "?";
}

TimeSeries residualize(const BivariatePair& pair, int q) {
  const auto s11 = bartlett_hac(pair.x1, pair.x1, q);
  const auto s12 = bartlett_hac(pair.x1, pair.x2, q);
  const auto s22 = bartlett_hac(pair.x2, pair.x2, q);
  const double beta = beta_rho_hat(s11, s12, s22).beta;
  std::vector<double> resid(pair.size());
  for (std::size_t t = 0; t < pair.size(); ++t)
    resid[t] = pair.x1[t] - beta * pair.x2[t];
  return TimeSeries(std::move(resid));
}

TwoSampleStat t_plain(const BivariatePair& pair, int q) {
  const double v1 = v_statistic(pair.x1);
  const double v2 = v_statistic(pair.x2);
  const double s11 = bartlett_hac(pair.x1, pair.x1, q).value;
  const double s22 = bartlett_hac(pair.x2, pair.x2, q).value;
  if (!(v1 > 0.0) || !(v2 > 0.0) || !(s11 > 0.0) || !(s22 > 0.0))
    throw degenerate_statistic("t_plain: zero V or S term");

  const double r = (v1 / s11) / (v2 / s22);
  TwoSampleStat stat;
  stat.variant = Variant::plain;
  stat.ratio1 = r;
  stat.ratio2 = 1.0 / r;
  stat.t_n = r + 1.0 / r;
  stat.q = q;
  return stat;
}

TwoSampleStat t_residualized(const BivariatePair& pair, int q,
                             bool one_sided) {
  const auto s11 = bartlett_hac(pair.x1, pair.x1, q);
  const auto s12 = bartlett_hac(pair.x1, pair.x2, q);
  const auto s22 = bartlett_hac(pair.x2, pair.x2, q);
  const auto [beta, rho] = beta_rho_hat(s11, s12, s22);
  const auto s11_resid = residual_hac(s11, s12, s22);

  std::vector<double> resid(pair.size());
  for (std::size_t t = 0; t < pair.size(); ++t)
    resid[t] = pair.x1[t] - beta * pair.x2[t];
  const double v1 = v_statistic(TimeSeries(std::move(resid)));
  const double v2 = v_statistic(pair.x2);
  if (!(v1 > 0.0) || !(v2 > 0.0) || !(s22.value > 0.0))
    throw degenerate_statistic("t_residualized: zero V or S term");

  const double r = (v1 / s11_resid.value) / (v2 / s22.value);
  TwoSampleStat stat;
  stat.variant =
      one_sided ? Variant::residualized_one_sided : Variant::residualized;
  stat.ratio1 = r;
  stat.q = q;
  stat.beta_hat = beta;
  stat.rho_hat = rho;
  if (one_sided) {
    stat.t_n = r;
  } else {
    stat.ratio2 = 1.0 / r;
    stat.t_n = r + 1.0 / r;
  }
  return stat;
}

}  // namespace lmtest
