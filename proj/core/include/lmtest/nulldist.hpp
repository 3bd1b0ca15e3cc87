#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace lmtest {

/// c^2(d) = cos(d pi)/B(d+1, d+1), the squared normalizing constant of the
/// moving-average kernel of fractional Brownian motion with E B^2(1) = 1.
double bifbm_c_squared(double d);

/// Cross-covariance E B_1(s) B_2(t) of the nonanticipative bivariate fBm
/// with memory parameters d1, d2 in (-1/2, 1/2) and noise correlation
/// rho_w. The d1 + d2 = 0 branch (|d1+d2| < 1e-12) is logarithmic.
double bifbm_cov(double s, double t, double d1, double d2, double rho_w);

/// Exact-in-distribution sampler for standard fractional Gaussian noise on a
/// grid, by circulant embedding of the autocovariance (one complex FFT per
/// two independent draws). Falls back to dense Cholesky for N <= 2048 when
/// the embedding is not nonnegative definite.
class FgnSampler {
 public:
  enum class Method { automatic, circulant, cholesky };

  /// d in [0, 0.5), N >= 2. Throws numerical_failure when the embedding
  /// fails and N is too large for the Cholesky fallback.
  FgnSampler(double d, std::size_t grid_size, Method method = Method::automatic);

  /// Two independent standard-fGn draws of length N.
  void sample_two(std::mt19937_64& rng, std::vector<double>& out1,
                  std::vector<double>& out2) const;

  /// Two fGn draws with cross-correlation rho at every lag (innovation
  /// mixing z1, rho z1 + sqrt(1-rho^2) z2).
  void sample_correlated(std::mt19937_64& rng, double rho,
                         std::vector<double>& out1,
                         std::vector<double>& out2) const;

  Method method() const { return method_; }
  std::size_t grid_size() const { return n_; }
  double memory() const { return d_; }

 private:
  void draw(std::mt19937_64& rng, std::vector<double>& a,
            std::vector<double>& b) const;  // circulant: Re/Im halves

  double d_;
  std::size_t n_;
  Method method_;
  std::vector<double> sqrt_eigs_;  // circulant path
  std::vector<double> chol_;       // packed lower triangle, Cholesky path
};

/// fBm paths B(k/N), k = 0..N, scaled so that E B^2(1) = 1.
struct FbmPathPair {
  std::size_t grid_size = 0;
  double d = 0.0;
  std::vector<double> b1, b2;  // length grid_size + 1, b(0) = 0
};

FbmPathPair simulate_fbm_pair(double d, double rho, std::size_t grid_size,
                              std::uint64_t seed,
                              FgnSampler::Method method = FgnSampler::Method::automatic);

/// Fractional Brownian bridges B0(k/N) = B(k/N) - (k/N) B(1).
struct BridgePair {
  std::size_t grid_size = 0;
  double d = 0.0;
  std::vector<double> b1, b2;
};

/// d in [0, 0.5), |rho| <= 1, grid_size a power of two >= 256.
BridgePair simulate_fbb_pair(double d, double rho, std::size_t grid_size,
                             std::uint64_t seed);

/// U = N^-1 sum_k B0(k/N)^2 - (N^-1 sum_k B0(k/N))^2 over k = 1..N
/// (right-endpoint sums; path[0] is the k = 0 bridge value and is skipped).
double u_functional(std::span<const double> bridge);

/// Empirical upper-alpha quantile of T = U1/U2 + U2/U1 over independent
/// bridge pairs (rho = 0). Replications are split across worker threads
/// with per-replication seed streams.
double mc_quantile(double d, double alpha, int reps, std::size_t grid_size,
                   std::uint64_t seed);

/// Quadratic model t_alpha(d) ~ a d^2 + b d + c with the Monte-Carlo table
/// it was fitted from.
struct QuantileModel {
  double alpha = 0.05;
  double a = 0.0, b = 0.0, c = 0.0;
  std::vector<std::pair<double, double>> mc_table;  // (d, quantile)
  int replications = 0;
  std::size_t grid_size = 0;
  std::uint64_t seed = 0;
  double max_residual = 0.0;

  double operator()(double d) const { return (a * d + b) * d + c; }

  /// The shipped default: t_5%(d) = 3.7 d^2 + 8.6 d + 5.2.
  static QuantileModel published();

  std::string to_json_string() const;
  static QuantileModel from_json_string(const std::string& text);
};

/// Least-squares quadratic fit of mc_quantile over d_grid.
QuantileModel fit_quantile_model(double alpha, std::span<const double> d_grid,
                                 int reps, std::size_t grid_size,
                                 std::uint64_t seed);

/// The regression step alone: quadratic least squares through an existing
/// (d, quantile) table.
QuantileModel fit_quadratic(double alpha,
                            std::vector<std::pair<double, double>> table);

}  // namespace lmtest
