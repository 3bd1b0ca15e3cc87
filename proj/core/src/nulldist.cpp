#include "lmtest/nulldist.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <json.hpp>

#include "lmtest/errors.hpp"
#include "lmtest/fft.hpp"
#include "lmtest/parallel.hpp"
#include "lmtest/rng.hpp"

namespace lmtest {

namespace {

double beta_fn(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double xlogx(double u) { return u == 0.0 ? 0.0 : u * std::log(std::abs(u)); }

/// fGn autocovariance gamma(k) = (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H})/2.
double fgn_acvf(double hurst, std::size_t k) {
  const double kk = static_cast<double>(k);
  const double twoH = 2.0 * hurst;
  return 0.5 * (std::pow(kk + 1.0, twoH) - 2.0 * std::pow(kk, twoH) +
                std::pow(std::abs(kk - 1.0), twoH));
}

}  // namespace

double bifbm_c_squared(double d) {
  return std::cos(d * std::numbers::pi) / beta_fn(d + 1.0, d + 1.0);
}

double bifbm_cov(double s, double t, double d1, double d2, double rho_w) {
  if (!(d1 > -0.5 && d1 < 0.5 && d2 > -0.5 && d2 < 0.5))
    throw invalid_input("bifbm_cov: d1, d2 must lie in (-1/2, 1/2)");
  const double pi = std::numbers::pi;
  const double psi = beta_fn(d1 + 1.0, d2 + 1.0) *
                     std::sqrt(std::cos(d1 * pi) * std::cos(d2 * pi)) /
                     std::sqrt(beta_fn(d1 + 1.0, d1 + 1.0) *
                               beta_fn(d2 + 1.0, d2 + 1.0));
  const double dsum = d1 + d2;
  const double r = t - s;

  if (std::abs(dsum) < 1e-12) {
    // logarithmic branch
    const double g1 = 0.5 * psi * (std::cos(pi * d1) + std::cos(pi * d2));
    const double g2 = psi * (std::sin(pi * d1) - std::sin(pi * d2)) / (2.0 * pi);
    return rho_w * (0.5 * g1 * (std::abs(s) + std::abs(t) - std::abs(r)) +
                    g2 * (xlogx(s) - xlogx(t) + xlogx(r)));
  }

  const double g12 = psi * std::sin(d1 * pi) / std::sin(dsum * pi);
  const double g21 = psi * std::sin(d2 * pi) / std::sin(dsum * pi);
  const auto sign_pick = [&](double u, double pos, double neg) {
    return u > 0.0 ? pos : neg;
  };
  const double expo = dsum + 1.0;
  const double gs = sign_pick(s, g12, g21);
  const double gt = sign_pick(t, g21, g12);
  const double gr = sign_pick(r, g21, g12);
  return rho_w * (gs * std::pow(std::abs(s), expo) +
                  gt * std::pow(std::abs(t), expo) -
                  gr * std::pow(std::abs(r), expo));
}

FgnSampler::FgnSampler(double d, std::size_t grid_size, Method method)
    : d_(d), n_(grid_size), method_(method) {
  if (!(d >= 0.0 && d < 0.5))
    throw invalid_input("FgnSampler: d must lie in [0, 0.5)");
  if (grid_size < 2) throw invalid_input("FgnSampler: grid too small");
  const double hurst = d + 0.5;

  if (method_ != Method::cholesky) {
    // circulant embedding: first row (g_0..g_N, g_{N-1}..g_1), length 2N
    const std::size_t m = 2 * n_;
    std::vector<std::complex<double>> row(m);
    for (std::size_t k = 0; k <= n_; ++k) row[k] = fgn_acvf(hurst, k);
    for (std::size_t k = 1; k < n_; ++k) row[m - k] = row[k];
    fft::cfft(row, false);

    double min_eig = 0.0, max_eig = 0.0;
    sqrt_eigs_.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      const double lam = row[k].real();
      min_eig = std::min(min_eig, lam);
      max_eig = std::max(max_eig, lam);
      sqrt_eigs_[k] = lam > 0.0 ? std::sqrt(lam) : 0.0;
    }
    if (min_eig >= -1e-10 * max_eig) {
      method_ = Method::circulant;
      return;
    }
    sqrt_eigs_.clear();
    if (method_ == Method::circulant)
      throw numerical_failure("FgnSampler: embedding not nonnegative definite");
    method_ = Method::cholesky;
  }

  // dense Cholesky of the Toeplitz covariance, packed lower triangle
  if (n_ > 2048)
    throw numerical_failure(
        "FgnSampler: Cholesky fallback limited to grids <= 2048");
  std::vector<double> gamma(n_);
  for (std::size_t k = 0; k < n_; ++k) gamma[k] = fgn_acvf(hurst, k);
  chol_.assign(n_ * (n_ + 1) / 2, 0.0);
  const auto at = [&](std::size_t i, std::size_t j) -> double& {
    return chol_[i * (i + 1) / 2 + j];
  };
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double acc = gamma[i - j];
      for (std::size_t k = 0; k < j; ++k) acc -= at(i, k) * at(j, k);
      if (i == j) {
        if (acc <= 0.0)
          throw numerical_failure("FgnSampler: covariance not positive definite");
        at(i, j) = std::sqrt(acc);
      } else {
        at(i, j) = acc / at(j, j);
      }
    }
  }
}

void FgnSampler::draw(std::mt19937_64& rng, std::vector<double>& a,
                      std::vector<double>& b) const {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t m = 2 * n_;
  std::vector<std::complex<double>> z(m);
  for (std::size_t k = 0; k < m; ++k)
    z[k] = sqrt_eigs_[k] * std::complex<double>(gauss(rng), gauss(rng));
  fft::cfft(z, false);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  a.resize(n_);
  b.resize(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    a[k] = z[k].real() * scale;
    b[k] = z[k].imag() * scale;
  }
}

void FgnSampler::sample_two(std::mt19937_64& rng, std::vector<double>& out1,
                            std::vector<double>& out2) const {
  if (method_ == Method::circulant) {
    draw(rng, out1, out2);
    return;
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto apply = [&](std::vector<double>& out) {
    std::vector<double> g(n_);
    for (double& v : g) v = gauss(rng);
    out.assign(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j <= i; ++j)
        acc += chol_[i * (i + 1) / 2 + j] * g[j];
      out[i] = acc;
    }
  };
  apply(out1);
  apply(out2);
}

void FgnSampler::sample_correlated(std::mt19937_64& rng, double rho,
                                   std::vector<double>& out1,
                                   std::vector<double>& out2) const {
  if (!(rho >= -1.0 && rho <= 1.0))
    throw invalid_input("FgnSampler: |rho| must be <= 1");
  std::vector<double> a1, b1, a2, b2;
  sample_two(rng, a1, b1);
  sample_two(rng, a2, b2);
  // mixing the generating noise preserves the marginal law and imposes
  // cross-covariance rho * gamma at every lag
  const double w = std::sqrt(1.0 - rho * rho);
  out1 = std::move(a1);
  out2.resize(n_);
  for (std::size_t k = 0; k < n_; ++k) out2[k] = rho * out1[k] + w * a2[k];
}

namespace {

std::vector<double> cumulate_to_fbm(const std::vector<double>& fgn, double d) {
  const std::size_t n = fgn.size();
  const double scale = std::pow(static_cast<double>(n), -(d + 0.5));
  std::vector<double> path(n + 1);
  path[0] = 0.0;
  double acc = 0.0, carry = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double y = fgn[k] - carry;
    const double t = acc + y;
    carry = (t - acc) - y;
    acc = t;
    path[k + 1] = acc * scale;
  }
  return path;
}

void to_bridge(std::vector<double>& path) {
  const std::size_t n = path.size() - 1;
  const double endpoint = path[n];
  for (std::size_t k = 0; k <= n; ++k)
    path[k] -= endpoint * static_cast<double>(k) / static_cast<double>(n);
}

}  // namespace

FbmPathPair simulate_fbm_pair(double d, double rho, std::size_t grid_size,
                              std::uint64_t seed, FgnSampler::Method method) {
  FgnSampler sampler(d, grid_size, method);
  auto rng = make_stream(seed, 0);
  std::vector<double> f1, f2;
  sampler.sample_correlated(rng, rho, f1, f2);
  FbmPathPair pair;
  pair.grid_size = grid_size;
  pair.d = d;
  pair.b1 = cumulate_to_fbm(f1, d);
  pair.b2 = cumulate_to_fbm(f2, d);
  return pair;
}

BridgePair simulate_fbb_pair(double d, double rho, std::size_t grid_size,
                             std::uint64_t seed) {
  if (grid_size < 256 || (grid_size & (grid_size - 1)) != 0)
    throw invalid_input("simulate_fbb_pair: grid must be a power of two >= 256");
  auto fbm = simulate_fbm_pair(d, rho, grid_size, seed);
  to_bridge(fbm.b1);
  to_bridge(fbm.b2);
  return {fbm.grid_size, fbm.d, std::move(fbm.b1), std::move(fbm.b2)};
}

double u_functional(std::span<const double> bridge) {
  const std::size_t n = bridge.size() - 1;
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    sum += bridge[k];
    sumsq += bridge[k] * bridge[k];
  }
  const double mean = sum / static_cast<double>(n);
  const double u = sumsq / static_cast<double>(n) - mean * mean;
  return u > 0.0 ? u : 0.0;
}

namespace {

double upper_quantile(std::vector<double>& values, double alpha) {
  std::sort(values.begin(), values.end());
  const double pos = (1.0 - alpha) * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

}  // namespace

double mc_quantile(double d, double alpha, int reps, std::size_t grid_size,
                   std::uint64_t seed) {
  if (reps < 1000) throw invalid_input("mc_quantile: need reps >= 1000");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw invalid_input("mc_quantile: alpha out of (0,1)");
  const FgnSampler sampler(d, grid_size);

  std::vector<double> stats(static_cast<std::size_t>(reps));
  parallel_for(static_cast<std::size_t>(reps), [&](std::size_t rep) {
    auto rng = make_stream(seed, rep);
    std::vector<double> f1, f2;
    sampler.sample_two(rng, f1, f2);
    auto p1 = cumulate_to_fbm(f1, d);
    auto p2 = cumulate_to_fbm(f2, d);
    to_bridge(p1);
    to_bridge(p2);
    const double u1 = u_functional(p1);
    const double u2 = u_functional(p2);
    stats[rep] = u1 / u2 + u2 / u1;
  });
  return upper_quantile(stats, alpha);
}

QuantileModel QuantileModel::published() {
  QuantileModel model;
  model.alpha = 0.05;
  model.a = 3.7;
  model.b = 8.6;
  model.c = 5.2;
  return model;
}

std::string QuantileModel::to_json_string() const {
  nlohmann::json j;
  j["alpha"] = alpha;
  j["coefficients"] = {a, b, c};
  j["replications"] = replications;
  j["grid_size"] = grid_size;
  j["seed"] = seed;
  j["max_residual"] = max_residual;
  auto& table = j["mc_table"] = nlohmann::json::array();
  for (const auto& [d, q] : mc_table) table.push_back({{"d", d}, {"q", q}});
  return j.dump(2);
}

QuantileModel QuantileModel::from_json_string(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  QuantileModel model;
  model.alpha = j.at("alpha").get<double>();
  const auto coef = j.at("coefficients");
  model.a = coef.at(0).get<double>();
  model.b = coef.at(1).get<double>();
  model.c = coef.at(2).get<double>();
  model.replications = j.value("replications", 0);
  model.grid_size = j.value("grid_size", std::size_t{0});
  model.seed = j.value("seed", std::uint64_t{0});
  model.max_residual = j.value("max_residual", 0.0);
  if (j.contains("mc_table"))
    for (const auto& row : j.at("mc_table"))
      model.mc_table.emplace_back(row.at("d").get<double>(),
                                  row.at("q").get<double>());
  return model;
}

QuantileModel fit_quantile_model(double alpha, std::span<const double> d_grid,
                                 int reps, std::size_t grid_size,
                                 std::uint64_t seed) {
  if (d_grid.size() < 5)
    throw invalid_input("fit_quantile_model: need at least 5 grid points");

  std::vector<std::pair<double, double>> table;
  for (std::size_t i = 0; i < d_grid.size(); ++i)
    table.emplace_back(d_grid[i],
                       mc_quantile(d_grid[i], alpha, reps, grid_size, seed + i));

  QuantileModel model = fit_quadratic(alpha, std::move(table));
  model.replications = reps;
  model.grid_size = grid_size;
  model.seed = seed;
  return model;
}

QuantileModel fit_quadratic(double alpha,
                            std::vector<std::pair<double, double>> table) {
  QuantileModel model;
  model.alpha = alpha;
  model.mc_table = std::move(table);

  // quadratic least squares via the 3x3 normal equations
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  double t0 = 0, t1 = 0, t2 = 0;
  for (const auto& [d, q] : model.mc_table) {
    const double d2 = d * d;
    s0 += 1;
    s1 += d;
    s2 += d2;
    s3 += d2 * d;
    s4 += d2 * d2;
    t0 += q;
    t1 += q * d;
    t2 += q * d2;
  }
  const auto det3 = [](double a11, double a12, double a13, double a21,
                       double a22, double a23, double a31, double a32,
                       double a33) {
    return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
           a13 * (a21 * a32 - a22 * a31);
  };
  const double det = det3(s4, s3, s2, s3, s2, s1, s2, s1, s0);
  if (det == 0.0)
    throw estimation_failed("fit_quantile_model: singular normal equations");
  model.a = det3(t2, s3, s2, t1, s2, s1, t0, s1, s0) / det;
  model.b = det3(s4, t2, s2, s3, t1, s1, s2, t0, s0) / det;
  model.c = det3(s4, s3, t2, s3, s2, t1, s2, s1, t0) / det;

  double max_resid = 0.0;
  for (const auto& [d, q] : model.mc_table)
    max_resid = std::max(max_resid, std::abs(model(d) - q));
  model.max_residual = max_resid;
  return model;
}

}  // namespace lmtest
