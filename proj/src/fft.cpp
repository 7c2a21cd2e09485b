#include "stripcalc/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include <fftw3.h>

namespace stripcalc {

namespace {

std::mutex plan_mutex;

fftw_plan get_plan(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  fftw_complex* buf = fftw_alloc_complex(static_cast<size_t>(n));
  fftw_plan p = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  cache.emplace(key, p);
  return p;
}

}  // namespace

void fft_inplace(cplx* data, int n, bool inverse) {
  if (n <= 1) return;
  fftw_plan p = get_plan(n, inverse ? FFTW_BACKWARD : FFTW_FORWARD);
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, d, d);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) data[i] *= s;
}

Vec fft(const Vec& x) {
  Vec y = x;
  fft_inplace(y.data(), static_cast<int>(y.size()), false);
  return y;
}

Vec ifft(const Vec& x) {
  Vec y = x;
  fft_inplace(y.data(), static_cast<int>(y.size()), true);
  return y;
}

RVec fft_frequencies(int n, double h) {
  RVec xi(n);
  for (int k = 0; k < n; ++k) {
    int kk = (k < (n + 1) / 2) ? k : k - n;
    xi[k] = 2 * pi * kk / (n * h);
  }
  return xi;
}

}  // namespace stripcalc
