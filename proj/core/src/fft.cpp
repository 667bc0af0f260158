#include "angb/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace angb {

namespace {

std::mutex plan_mutex;
std::map<std::tuple<int, int, int>, fftw_plan> plan_cache;

fftw_plan get_plan(int d, int n, int sign) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_tuple(d, n, sign);
  auto it = plan_cache.find(key);
  if (it != plan_cache.end()) return it->second;

  std::size_t total = d == 1 ? n : static_cast<std::size_t>(n) * n;
  std::vector<fftw_complex> scratch(total);
  fftw_plan plan;
  if (d == 1)
    plan = fftw_plan_dft_1d(n, scratch.data(), scratch.data(), sign,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
  else
    plan = fftw_plan_dft_2d(n, n, scratch.data(), scratch.data(), sign,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_cache.emplace(key, plan);
  return plan;
}

}  // namespace

void centered_fft(int d, int n, double L, const std::complex<double>* in,
                  std::complex<double>* out, bool inverse) {
  if (d != 1 && d != 2) throw std::invalid_argument("centered_fft: d must be 1 or 2");
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("centered_fft: n must be even");

  const std::size_t total = d == 1 ? n : static_cast<std::size_t>(n) * n;
  const double h = 2.0 * L / n;
  const double dxi = std::numbers::pi / L;
  const double amp1 = (inverse ? dxi : h) / std::sqrt(2.0 * std::numbers::pi);
  double amp = 1.0;
  for (int i = 0; i < d; ++i) amp *= amp1;
  // The centered index shift contributes exp(-/+ i pi n/2) per axis: +-1 for even n.
  double phase = (n % 4 == 0) ? 1.0 : -1.0;
  for (int i = 1; i < d; ++i) phase *= phase;
  amp *= phase;

  // Pre-twiddle (-1)^{sum of indices}.
  for (std::size_t idx = 0; idx < total; ++idx) {
    int parity = d == 1 ? static_cast<int>(idx & 1)
                        : static_cast<int>(((idx / n) + (idx % n)) & 1);
    out[idx] = parity ? -in[idx] : in[idx];
  }

  fftw_plan plan = get_plan(d, n, inverse ? FFTW_BACKWARD : FFTW_FORWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(out),
                   reinterpret_cast<fftw_complex*>(out));

  // Post-twiddle and scaling.
  for (std::size_t idx = 0; idx < total; ++idx) {
    int parity = d == 1 ? static_cast<int>(idx & 1)
                        : static_cast<int>(((idx / n) + (idx % n)) & 1);
    out[idx] *= parity ? -amp : amp;
  }
}

}  // namespace angb
