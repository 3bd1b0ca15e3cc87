#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lmtest/series.hpp"

namespace lmtest {

/// FARIMA(p, d, q) model: phi(L)(1-L)^d X(t) = theta(L) eps(t) with
/// phi(z) = 1 - a_1 z - ... - a_p z^p, theta(z) = 1 + b_1 z + ... + b_q z^q
/// and Gaussian innovations of standard deviation innovation_sd.
struct FarimaSpec {
  double d = 0.0;
  std::vector<double> ar;  // a_1..a_p
  std::vector<double> ma;  // b_1..b_q
  double innovation_sd = 1.0;

  /// Throws invalid_input on d outside [0, 0.5), an unstable AR polynomial
  /// or a nonpositive innovation scale.
  void validate() const;
};

/// Innovation mixing for the bivariate generator, eps_i = a_i1 xi_1 + a_i2
/// xi_2 with (xi_1, xi_2) i.i.d. standard normal.
struct BivariateNoiseSpec {
  std::array<double, 4> mixing{1.0, 0.0, 0.0, 1.0};  // a11 a12 a21 a22

  /// Shorthand a11 = a22 = 1-p, a12 = a21 = p.
  static BivariateNoiseSpec from_p(double p);

  double determinant() const {
    return mixing[0] * mixing[3] - mixing[1] * mixing[2];
  }
  /// Throws invalid_input on a singular mixing matrix.
  void validate() const;
};

/// Coefficients psi_k of (1-z)^{-d}: psi_0 = 1, psi_k = psi_{k-1}(k-1+d)/k.
std::vector<double> frac_integrate_coefficients(double d, std::size_t count);

/// Applies (1-L)^{-d} to the whole buffer by FFT convolution.
std::vector<double> frac_integrate(std::span<const double> innovations,
                                   double d);

/// Burn-in default: the truncated MA(inf) startup transient decays like
/// k^{d-1}, so long samples get proportionally longer warmup.
std::size_t default_burn_in(std::size_t n);

/// Gaussian innovations -> MA filter -> fractional integration -> AR
/// recursion; the first burn_in values are discarded.
TimeSeries gen_farima(const FarimaSpec& spec, std::size_t n,
                      std::size_t burn_in, std::uint64_t seed);

/// Bivariate version with mixed innovations, one RNG stream per call.
BivariatePair gen_bivariate(const FarimaSpec& spec1, const FarimaSpec& spec2,
                            const BivariateNoiseSpec& noise, std::size_t n,
                            std::size_t burn_in, std::uint64_t seed);

}  // namespace lmtest
