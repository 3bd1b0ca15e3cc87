#include "lmtest/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lmtest/bandwidth.hpp"
#include "lmtest/errors.hpp"
#include "lmtest/fft.hpp"
#include "lmtest/rng.hpp"

namespace lmtest {

void FarimaSpec::validate() const {
  if (!(d >= 0.0 && d < 0.5))
    throw invalid_input("FarimaSpec: d must lie in [0, 0.5)");
  if (!(innovation_sd > 0.0))
    throw invalid_input("FarimaSpec: innovation_sd must be > 0");
  ArSpectrum pol;
  pol.phi = ar;
  if (!pol.stationary())
    throw invalid_input("FarimaSpec: AR polynomial has a root inside the unit circle");
}

BivariateNoiseSpec BivariateNoiseSpec::from_p(double p) {
  BivariateNoiseSpec spec;
  spec.mixing = {1.0 - p, p, p, 1.0 - p};
  return spec;
}

void BivariateNoiseSpec::validate() const {
  if (determinant() == 0.0)
    throw invalid_input("BivariateNoiseSpec: singular mixing matrix");
}

std::vector<double> frac_integrate_coefficients(double d, std::size_t count) {
  std::vector<double> psi(count);
  if (count == 0) return psi;
  psi[0] = 1.0;
  for (std::size_t k = 1; k < count; ++k)
    psi[k] = psi[k - 1] * (static_cast<double>(k) - 1.0 + d) /
             static_cast<double>(k);
  return psi;
}

std::vector<double> frac_integrate(std::span<const double> innovations,
                                   double d) {
  if (!(d >= 0.0 && d < 0.5))
    throw invalid_input("frac_integrate: d must lie in [0, 0.5)");
  if (d == 0.0) return {innovations.begin(), innovations.end()};
  const auto psi = frac_integrate_coefficients(d, innovations.size());
  return fft::convolve(innovations, psi, innovations.size());
}

std::size_t default_burn_in(std::size_t n) {
  return std::max<std::size_t>(1024, n / 2);
}

namespace {

std::vector<double> run_filters(const FarimaSpec& spec,
                                std::vector<double> eps, std::size_t n,
                                std::size_t burn_in) {
  // MA polynomial first (finite filter), then fractional integration over
  // the whole buffer, then the AR recursion; the filters commute in exact
  // arithmetic but truncation makes this order the best behaved.
  std::vector<double> x;
  if (!spec.ma.empty()) {
    x.assign(eps.size(), 0.0);
    for (std::size_t t = 0; t < eps.size(); ++t) {
      double acc = eps[t];
      for (std::size_t j = 0; j < spec.ma.size() && j < t; ++j)
        acc += spec.ma[j] * eps[t - 1 - j];
      x[t] = acc;
    }
  } else {
    x = std::move(eps);
  }

  if (spec.d != 0.0) x = frac_integrate(x, spec.d);

  if (!spec.ar.empty()) {
    for (std::size_t t = 0; t < x.size(); ++t) {
      double acc = x[t];
      for (std::size_t j = 0; j < spec.ar.size() && j < t; ++j)
        acc += spec.ar[j] * x[t - 1 - j];
      x[t] = acc;
    }
  }

  return {x.begin() + static_cast<std::ptrdiff_t>(burn_in),
          x.begin() + static_cast<std::ptrdiff_t>(burn_in + n)};
}

}  // namespace

TimeSeries gen_farima(const FarimaSpec& spec, std::size_t n,
                      std::size_t burn_in, std::uint64_t seed) {
  spec.validate();
  if (n < 2) throw invalid_input("gen_farima: n too small");
  auto rng = make_stream(seed, 0);
  std::normal_distribution<double> gauss(0.0, spec.innovation_sd);
  std::vector<double> eps(n + burn_in);
  for (double& e : eps) e = gauss(rng);
  return TimeSeries(run_filters(spec, std::move(eps), n, burn_in));
}

BivariatePair gen_bivariate(const FarimaSpec& spec1, const FarimaSpec& spec2,
                            const BivariateNoiseSpec& noise, std::size_t n,
                            std::size_t burn_in, std::uint64_t seed) {
  spec1.validate();
  spec2.validate();
  noise.validate();
  if (n < 2) throw invalid_input("gen_bivariate: n too small");

  auto rng = make_stream(seed, 0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t len = n + burn_in;
  std::vector<double> e1(len), e2(len);
  const auto& a = noise.mixing;
  for (std::size_t t = 0; t < len; ++t) {
    const double xi1 = gauss(rng);
    const double xi2 = gauss(rng);
    e1[t] = (a[0] * xi1 + a[1] * xi2) * spec1.innovation_sd;
    e2[t] = (a[2] * xi1 + a[3] * xi2) * spec2.innovation_sd;
  }
  TimeSeries x1(run_filters(spec1, std::move(e1), n, burn_in));
  TimeSeries x2(run_filters(spec2, std::move(e2), n, burn_in));
  return {std::move(x1), std::move(x2)};
}

}  // namespace lmtest
