#include "lmtest/pipeline.hpp"

#include <cmath>

#include <json.hpp>

#include "lmtest/bandwidth.hpp"
#include "lmtest/errors.hpp"

namespace lmtest {

std::string TestReport::to_json_string() const {
  nlohmann::json j;
  j["variant"] = to_string(variant);
  j["n"] = n;
  j["t_value"] = t_value;
  j["d_hat_1"] = d_hat_1;
  j["d_hat_2"] = d_hat_2;
  j["d_hat"] = d_hat;
  j["q_used"] = q_used;
  j["q_source"] = q_source;
  j["beta_hat"] = beta_hat;
  j["rho_hat"] = rho_hat;
  j["critical_value"] = critical_value;
  j["alpha"] = alpha;
  j["reject"] = reject;
  j["estimator_method"] = estimator_method;
  j["swapped"] = swapped;
  if (seed) j["seed"] = *seed;
  j["warnings"] = warnings;
  return j.dump(2);
}

TestReport run_two_sample_test(const BivariatePair& input,
                               const TestOptions& options) {
  if (!(options.alpha > 0.0 && options.alpha < 1.0))
    throw invalid_input("run_two_sample_test: alpha out of (0,1)");
  if (std::abs(options.quantiles.alpha - options.alpha) > 1e-12)
    throw invalid_input(
        "run_two_sample_test: quantile model was calibrated for a different "
        "alpha; regenerate one with the quantiles command");

  const BivariatePair pair = options.swap_pair ? input.swapped() : input;

  TestReport report;
  report.variant = options.variant;
  report.n = pair.size();
  report.alpha = options.alpha;
  report.swapped = options.swap_pair;

  const auto e1 = estimate_d(pair.x1, options.estimator, options.estimator_m);
  const auto e2 = estimate_d(pair.x2, options.estimator, options.estimator_m);
  report.d_hat_1 = e1.d_clamped;
  report.d_hat_2 = e2.d_clamped;
  report.d_hat = average_d(e1, e2);
  report.estimator_method = to_string(e1.method);
  report.warnings.push_back(
      "d estimated by " + to_string(e1.method) +
      " in place of the adaptive FEXP estimator");
  if (e1.d_raw != e1.d_clamped || e2.d_raw != e2.d_clamped)
    report.warnings.push_back("d estimate clamped to [0, 0.49]");

  int q = 0;
  if (options.q_override) {
    q = *options.q_override;
    if (q < 0 || static_cast<std::size_t>(q) >= pair.size())
      throw invalid_input("run_two_sample_test: q override out of range");
    report.q_source = "user";
  } else {
    const auto bw =
        adaptive_q(pair, e1.d_clamped, e2.d_clamped, options.p_max);
    q = bw.q_hat;
    report.q_source = "adaptive";
    if (q == static_cast<int>(pair.size() / 4))
      report.warnings.push_back("adaptive bandwidth clamped to n/4");
  }
  report.q_used = q;

  TwoSampleStat stat;
  switch (options.variant) {
    case Variant::plain:
      stat = t_plain(pair, q);
      break;
    case Variant::residualized:
      stat = t_residualized(pair, q, false);
      break;
    case Variant::residualized_one_sided:
      stat = t_residualized(pair, q, true);
      break;
  }
  report.t_value = stat.t_n;
  report.beta_hat = stat.beta_hat;
  report.rho_hat = stat.rho_hat;
  if (std::abs(stat.rho_hat) > 0.95)
    report.warnings.push_back(
        "estimated long-run correlation close to 1; residual statistic is "
        "nearly degenerate");

  report.critical_value = options.quantiles(report.d_hat);
  report.reject = report.t_value > report.critical_value;
  return report;
}

}  // namespace lmtest
