#include "lmtest/memest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lmtest/errors.hpp"
#include "lmtest/fft.hpp"

namespace lmtest {

namespace {
constexpr double kDMin = 0.0;
constexpr double kDMax = 0.49;
constexpr double kSearchLo = -0.49;
constexpr double kSearchHi = 0.99;
}  // namespace

std::string to_string(DMethod m) {
  return m == DMethod::local_whittle ? "local_whittle" : "log_periodogram";
}

double clamp_d(double d) { return std::clamp(d, kDMin, kDMax); }

int default_bandwidth_m(std::size_t n) {
  return static_cast<int>(std::pow(static_cast<double>(n), 0.55));
}

Periodogram periodogram(const TimeSeries& s) {
  const std::size_t n = s.size();
  if (n < 8) throw invalid_input("periodogram: need n >= 8");
  std::vector<double> centered(n);
  for (std::size_t t = 0; t < n; ++t) centered[t] = s[t] - s.mean();
  const auto spec = fft::rfft(centered);

  const std::size_t half = n / 2;
  Periodogram pg;
  pg.frequencies.resize(half);
  pg.ordinates.resize(half);
  const double norm = 1.0 / (2.0 * std::numbers::pi * static_cast<double>(n));
  for (std::size_t j = 1; j <= half; ++j) {
    pg.frequencies[j - 1] =
        2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    pg.ordinates[j - 1] = std::norm(spec[j]) * norm;
  }
  return pg;
}

double local_whittle_objective(const Periodogram& pg, int m, double d) {
  double acc = 0.0, logsum = 0.0;
  for (int j = 0; j < m; ++j) {
    const double lam = pg.frequencies[static_cast<std::size_t>(j)];
    const double lj = std::log(lam);
    acc += pg.ordinates[static_cast<std::size_t>(j)] * std::exp(2.0 * d * lj);
    logsum += lj;
  }
  return std::log(acc / m) - 2.0 * d * (logsum / m);
}

namespace {

MemoryEstimate whittle_fit(const Periodogram& pg, int m) {
  const auto R = [&](double d) { return local_whittle_objective(pg, m, d); };

  // coarse grid guards against spurious local minima near the boundary
  constexpr int kGrid = 200;
  double best_d = kSearchLo, best_val = R(kSearchLo);
  int best_i = 0;
  for (int i = 1; i < kGrid; ++i) {
    const double d = kSearchLo + (kSearchHi - kSearchLo) * i / (kGrid - 1.0);
    const double val = R(d);
    if (val < best_val) {
      best_val = val;
      best_d = d;
      best_i = i;
    }
  }
  double lo = kSearchLo + (kSearchHi - kSearchLo) * std::max(best_i - 1, 0) /
                              (kGrid - 1.0);
  double hi = kSearchLo + (kSearchHi - kSearchLo) *
                              std::min(best_i + 1, kGrid - 1) / (kGrid - 1.0);

  // golden-section refinement
  constexpr double kTol = 1e-8;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo), dd = lo + gr * (hi - lo);
  double fc = R(c), fd = R(dd);
  int guard = 0;
  while (hi - lo > kTol) {
    if (++guard > 200)
      throw estimation_failed("local_whittle: refinement did not converge");
    if (fc < fd) {
      hi = dd;
      dd = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = R(c);
    } else {
      lo = c;
      c = dd;
      fc = fd;
      dd = lo + gr * (hi - lo);
      fd = R(dd);
    }
  }
  const double d_hat = 0.5 * (lo + hi);

  MemoryEstimate est;
  est.d_raw = d_hat;
  est.d_clamped = clamp_d(d_hat);
  est.method = DMethod::local_whittle;
  est.bandwidth_m = m;
  est.std_error = 1.0 / (2.0 * std::sqrt(static_cast<double>(m)));
  return est;
}

MemoryEstimate gph_fit(const Periodogram& pg, int m) {
  // OLS of log I(lambda_j) on x_j = -2 log lambda_j
  double sx = 0.0, sy = 0.0;
  std::vector<double> xs(static_cast<std::size_t>(m)),
      ys(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const double I = pg.ordinates[static_cast<std::size_t>(j)];
    if (I <= 0.0)
      throw estimation_failed("log_periodogram: zero ordinate in band");
    xs[static_cast<std::size_t>(j)] =
        -2.0 * std::log(pg.frequencies[static_cast<std::size_t>(j)]);
    ys[static_cast<std::size_t>(j)] = std::log(I);
    sx += xs[static_cast<std::size_t>(j)];
    sy += ys[static_cast<std::size_t>(j)];
  }
  const double xbar = sx / m, ybar = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (int j = 0; j < m; ++j) {
    const double dx = xs[static_cast<std::size_t>(j)] - xbar;
    sxx += dx * dx;
    sxy += dx * (ys[static_cast<std::size_t>(j)] - ybar);
  }
  if (sxx <= 0.0) throw estimation_failed("log_periodogram: degenerate band");
  const double d_hat = sxy / sxx;

  MemoryEstimate est;
  est.d_raw = d_hat;
  est.d_clamped = clamp_d(d_hat);
  est.method = DMethod::log_periodogram;
  est.bandwidth_m = m;
  // log-periodogram errors have variance pi^2/6
  est.std_error = std::sqrt(std::numbers::pi * std::numbers::pi / 6.0 / sxx);
  return est;
}

}  // namespace

MemoryEstimate estimate_d(const TimeSeries& s, DMethod method,
                          std::optional<int> m) {
  const std::size_t n = s.size();
  if (n < 128) throw invalid_input("estimate_d: need n >= 128");
  const int band = m.value_or(default_bandwidth_m(n));
  if (band < 2 || static_cast<std::size_t>(band) >= n / 2)
    throw invalid_bandwidth("estimate_d: m out of range");

  const auto pg = periodogram(s);
  return method == DMethod::local_whittle ? whittle_fit(pg, band)
                                          : gph_fit(pg, band);
}

double average_d(const MemoryEstimate& e1, const MemoryEstimate& e2) {
  return clamp_d(0.5 * (e1.d_clamped + e2.d_clamped));
}

}  // namespace lmtest
