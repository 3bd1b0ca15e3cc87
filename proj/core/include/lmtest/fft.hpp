#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace lmtest::fft {

/// DFT of a real sequence; returns the n/2+1 nonredundant bins.
std::vector<std::complex<double>> rfft(std::span<const double> x);

/// Inverse of rfft, normalized so that irfft(rfft(x), n) == x.
std::vector<double> irfft(std::span<const std::complex<double>> spectrum,
                          std::size_t n);

/// In-place complex DFT (forward: sum x_k e^{-2pi i jk/n}, unnormalized).
void cfft(std::vector<std::complex<double>>& x, bool inverse = false);

/// First out_len terms of the linear convolution a*b (FFT-based).
std::vector<double> convolve(std::span<const double> a,
                             std::span<const double> b, std::size_t out_len);

}  // namespace lmtest::fft
