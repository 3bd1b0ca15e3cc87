#pragma once

#include <cstddef>
#include <vector>

#include "lmtest/series.hpp"

namespace lmtest {

/// Spectral density of a fitted AR(p) model, phi(z) = 1 - phi_1 z - ... -
/// phi_p z^p: g(x) = innovation_variance / (2 pi |phi(e^{ix})|^2).
struct ArSpectrum {
  std::vector<double> phi;            // empty for white noise
  double innovation_variance = 1.0;   // > 0
  int order() const { return static_cast<int>(phi.size()); }

  /// |phi(e^{ix})|^2.
  double transfer(double x) const;
  /// g(x)/g(0) = |phi(1)|^2 / |phi(e^{ix})|^2.
  double ratio(double x) const;
  /// g(x).
  double density(double x) const;
  /// true iff all roots of phi(z) lie outside the unit circle (checked by
  /// the step-down recursion: all reflection coefficients in (-1, 1)).
  bool stationary() const;
};

/// Coefficients pi_k of (1-z)^d: pi_0 = 1, pi_k = pi_{k-1} (k-1-d)/k.
std::vector<double> frac_diff_coefficients(double d, std::size_t count);

/// Fractional differencing y(t) = sum_{k=0}^{t-1} pi_k(d) x(t-k), d in
/// [0, 1/2). Applied by FFT convolution. Throws invalid_input on bad d.
TimeSeries frac_diff(const TimeSeries& s, double d);

/// Yule-Walker/Levinson-Durbin AR fits for p = 0..p_max; returns the order
/// minimizing BIC(p) = n log(sigma2_p) + p log n. Throws estimation_failed
/// when the sample autocovariance is not positive definite, invalid_input
/// when n < 10 p_max.
ArSpectrum fit_ar_bic(const TimeSeries& s, int p_max);

/// The short-memory difference integral
///   I = int_0^pi (g1(x)/g1(0) - g2(x)/g2(0)) dx / (x^{2d} sin^2(x/2)),
/// by composite 16-node Gauss-Legendre on the octave mesh {pi 2^-k},
/// k = 0..40, with the [0, pi 2^-40] sliver closed by its x^{-2d} power law.
/// The integrand numerator is evaluated in cancellation-free cosine-
/// polynomial form; naive evaluation drowns the deep panels in rounding.
double i_hat(const ArSpectrum& g1, const ArSpectrum& g2, double d);

/// i_hat with the octave mesh depth exposed (refinement tests).
double i_hat_mesh(const ArSpectrum& g1, const ArSpectrum& g2, double d,
                  int panels_per_octave);

enum class QBranch { low_d, high_d };

struct BandwidthResult {
  int q_hat = 0;
  double i_hat = 0.0;
  double d_hat = 0.0;
  QBranch branch = QBranch::low_d;
};

/// Exponent e(d) of n in the bandwidth rule: 1/(3+4d) for d <= 1/4,
/// 1/2 - d above; the two branches agree at d = 1/4.
double qopt_exponent(double d);

/// round(0.3 |i|^{1/2} n^{e(d)}), ties away from zero, clamped to [0, n/4].
int qopt_from_i(double i, double d, std::size_t n);

/// Adaptive bandwidth q = round(0.3 |I|^{1/2} n^{e(d)}), clamped to
/// [0, n/4]. Each series is fractionally differenced by its own memory
/// estimate before the AR fit; the weight x^{2d} and the exponent use the
/// pooled d_hat = clamp((d1+d2)/2). Rounding is to nearest, ties away from
/// zero. q = 0 is a valid outcome (S degenerates to gamma(0)).
BandwidthResult adaptive_q(const BivariatePair& pair, double d_hat_1,
                           double d_hat_2, int p_max = 10);

/// Single-estimate form: differences both series by the same d_hat.
BandwidthResult adaptive_q(const BivariatePair& pair, double d_hat,
                           int p_max = 10);

}  // namespace lmtest
