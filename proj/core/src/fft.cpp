#include "lmtest/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace lmtest::fft {
namespace {

// FFTW plan creation is not thread safe; new-array execution is. Plans are
// created once per (kind, size) with FFTW_UNALIGNED so they can be executed
// on any caller-owned buffer.
class PlanCache {
 public:
  fftw_plan r2c(std::size_t n) {
    return get(kR2C, n, [n] {
      std::vector<double> in(n);
      std::vector<fftw_complex> out(n / 2 + 1);
      return fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out.data(),
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
    });
  }
  fftw_plan c2r(std::size_t n) {
    return get(kC2R, n, [n] {
      std::vector<fftw_complex> in(n / 2 + 1);
      std::vector<double> out(n);
      return fftw_plan_dft_c2r_1d(static_cast<int>(n), in.data(), out.data(),
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
    });
  }
  fftw_plan c2c(std::size_t n, bool inverse) {
    return get(inverse ? kC2CInv : kC2CFwd, n, [n, inverse] {
      std::vector<fftw_complex> buf(n);
      return fftw_plan_dft_1d(static_cast<int>(n), buf.data(), buf.data(),
                              inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
    });
  }

  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

 private:
  enum Kind { kR2C, kC2R, kC2CFwd, kC2CInv };

  template <class Make>
  fftw_plan get(Kind kind, std::size_t n, Make make) {
    std::lock_guard lock(mutex_);
    auto key = std::pair(kind, n);
    auto it = plans_.find(key);
    if (it == plans_.end()) it = plans_.emplace(key, make()).first;
    return it->second;
  }

  std::mutex mutex_;
  std::map<std::pair<int, std::size_t>, fftw_plan> plans_;
};

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

std::vector<std::complex<double>> rfft(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> in(x.begin(), x.end());
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_execute_dft_r2c(PlanCache::instance().r2c(n), in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> irfft(std::span<const std::complex<double>> spectrum,
                          std::size_t n) {
  std::vector<std::complex<double>> in(spectrum.begin(), spectrum.end());
  std::vector<double> out(n);
  fftw_execute_dft_c2r(PlanCache::instance().c2r(n),
                       reinterpret_cast<fftw_complex*>(in.data()), out.data());
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
  return out;
}

void cfft(std::vector<std::complex<double>>& x, bool inverse) {
  fftw_execute_dft(PlanCache::instance().c2c(x.size(), inverse),
                   reinterpret_cast<fftw_complex*>(x.data()),
                   reinterpret_cast<fftw_complex*>(x.data()));
}

std::vector<double> convolve(std::span<const double> a,
                             std::span<const double> b, std::size_t out_len) {
  const std::size_t full = a.size() + b.size() - 1;
  const std::size_t m = next_pow2(full);
  std::vector<double> pa(m, 0.0), pb(m, 0.0);
  std::memcpy(pa.data(), a.data(), a.size() * sizeof(double));
  std::memcpy(pb.data(), b.data(), b.size() * sizeof(double));
  auto fa = rfft(pa);
  const auto fb = rfft(pb);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  auto res = irfft(fa, m);
  res.resize(std::min(out_len, full));
  return res;
}

}  // namespace lmtest::fft
