// SPDX-License-Identifier: Apache-2.0

#include "mmcs/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "mmcs/errors.hpp"

namespace mmcs {
namespace {

// FFTW plan creation is not thread safe and plans are tied to their buffers,
// so all transforms run under one lock with cached per-(size, sign) plans.
// Transform cost is negligible next to tensor synthesis, which never locks.
struct PlanEntry {
  fftw_plan plan = nullptr;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
};

std::mutex g_mutex;
std::map<std::pair<int, int>, PlanEntry>& plan_cache() {
  static std::map<std::pair<int, int>, PlanEntry> cache;
  return cache;
}

std::vector<std::complex<double>> run(std::span<const std::complex<double>> x, int sign) {
  if (x.empty()) throw DimensionError("dft: empty input");
  const int n = static_cast<int>(x.size());

  std::scoped_lock lock(g_mutex);
  auto& entry = plan_cache()[{n, sign}];
  if (entry.plan == nullptr) {
    entry.in = fftw_alloc_complex(static_cast<std::size_t>(n));
    entry.out = fftw_alloc_complex(static_cast<std::size_t>(n));
    if (entry.in == nullptr || entry.out == nullptr) throw Error("dft: allocation failed");
    entry.plan = fftw_plan_dft_1d(n, entry.in, entry.out, sign, FFTW_ESTIMATE);
    if (entry.plan == nullptr) throw Error("dft: plan creation failed");
  }

  for (int i = 0; i < n; ++i) {
    entry.in[i][0] = x[static_cast<std::size_t>(i)].real();
    entry.in[i][1] = x[static_cast<std::size_t>(i)].imag();
  }
  fftw_execute(entry.plan);

  std::vector<std::complex<double>> result(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    result[static_cast<std::size_t>(i)] = {entry.out[i][0], entry.out[i][1]};
  }
  return result;
}

}  // namespace

std::vector<std::complex<double>> inverse_dft_scaled(std::span<const std::complex<double>> x) {
  auto result = run(x, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(x.size());
  for (auto& v : result) v *= scale;
  return result;
}

std::vector<std::complex<double>> inverse_dft_raw(std::span<const std::complex<double>> x) {
  return run(x, FFTW_BACKWARD);
}

std::vector<std::complex<double>> forward_dft(std::span<const std::complex<double>> x) {
  return run(x, FFTW_FORWARD);
}

}  // namespace mmcs
