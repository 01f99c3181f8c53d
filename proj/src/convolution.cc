/*
Copyright 2026 The roomverb Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "roomverb/convolution.h"

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <memory>
#include <mutex>

namespace roomverb {
namespace {

// Kernels up to this length are convolved in the time domain.
constexpr std::size_t kDirectKernelLimit = 64;

// FFTW's planner is not thread-safe; execution of distinct plans is.
std::mutex& PlannerMutex() {
  static std::mutex mutex;
  return mutex;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> Allocate(std::size_t n) {
  return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * n)));
}

struct PlanDeleter {
  void operator()(fftw_plan p) const {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter>;

std::size_t FftSize(std::size_t n) {
  std::size_t size = 1;
  while (size < n) size <<= 1;
  return size;
}

std::vector<double> DirectConvolve(std::span<const double> a,
                                   std::span<const double> b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<double> FftConvolve(std::span<const double> a,
                                std::span<const double> b) {
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = FftSize(out_len);
  const std::size_t bins = n / 2 + 1;

  auto time_a = Allocate<double>(n);
  auto time_b = Allocate<double>(n);
  auto freq_a = Allocate<fftw_complex>(bins);
  auto freq_b = Allocate<fftw_complex>(bins);

  Plan forward_a, forward_b, inverse;
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    forward_a.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), time_a.get(),
                                         freq_a.get(), FFTW_ESTIMATE));
    forward_b.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), time_b.get(),
                                         freq_b.get(), FFTW_ESTIMATE));
    inverse.reset(fftw_plan_dft_c2r_1d(static_cast<int>(n), freq_a.get(),
                                       time_a.get(), FFTW_ESTIMATE));
  }

  std::fill_n(time_a.get(), n, 0.0);
  std::fill_n(time_b.get(), n, 0.0);
  std::copy(a.begin(), a.end(), time_a.get());
  std::copy(b.begin(), b.end(), time_b.get());
  fftw_execute(forward_a.get());
  fftw_execute(forward_b.get());

  for (std::size_t k = 0; k < bins; ++k) {
    const std::complex<double> x(freq_a[k][0], freq_a[k][1]);
    const std::complex<double> y(freq_b[k][0], freq_b[k][1]);
    const std::complex<double> z = x * y;
    freq_a[k][0] = z.real();
    freq_a[k][1] = z.imag();
  }
  fftw_execute(inverse.get());

  std::vector<double> out(out_len);
  const double norm = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = time_a[i] * norm;
  return out;
}

}  // namespace

std::vector<double> LinearConvolve(std::span<const double> a,
                                   std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  if (std::min(a.size(), b.size()) <= kDirectKernelLimit) {
    return a.size() >= b.size() ? DirectConvolve(a, b) : DirectConvolve(b, a);
  }
  return FftConvolve(a, b);
}

}  // namespace roomverb
