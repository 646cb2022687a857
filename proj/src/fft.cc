// src/fft.cc

// Copyright 2026  spoofkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "spoofkit/fft.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spoofkit {

size_t next_pow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_complex(std::vector<std::complex<double>>& data, bool inverse) {
  const size_t n = data.size();
  if (!is_power_of_two(n))
    throw RangeError("fft: size must be a power of two, got " +
                     std::to_string(n));

  // Bit-reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  const double sign = inverse ? 1.0 : -1.0;
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = data[i + k];
        std::complex<double> v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }

  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (std::complex<double>& c : data) c *= scale;
  }
}

Spectrum fft(std::span<const double> x, size_t n_fft) {
  if (!is_power_of_two(n_fft))
    throw RangeError("fft: n_fft must be a power of two");
  if (x.size() > n_fft)
    throw RangeError("fft: input longer than n_fft (" +
                     std::to_string(x.size()) + " > " + std::to_string(n_fft) +
                     ")");
  Spectrum s;
  s.n_fft = n_fft;
  s.bins.assign(n_fft, {0.0, 0.0});
  for (size_t i = 0; i < x.size(); ++i) s.bins[i] = {x[i], 0.0};
  fft_complex(s.bins, /*inverse=*/false);
  return s;
}

std::vector<double> ifft(const Spectrum& s) {
  if (s.bins.size() != s.n_fft || !is_power_of_two(s.n_fft))
    throw RangeError("ifft: inconsistent spectrum");
  std::vector<std::complex<double>> data = s.bins;
  fft_complex(data, /*inverse=*/true);
  std::vector<double> out(s.n_fft);
  for (size_t i = 0; i < s.n_fft; ++i) out[i] = data[i].real();
  return out;
}

namespace {

// Kernels at or below this length are cheaper (and exact for trivial kernels
// such as a unit impulse) in the direct form.
constexpr size_t kDirectKernelLimit = 32;

std::vector<double> convolve_direct(std::span<const double> x,
                                    std::span<const double> h) {
  std::vector<double> out(x.size(), 0.0);
  for (size_t i = 0; i < x.size(); ++i) {
    const size_t kmax = std::min(h.size() - 1, i);
    double acc = 0.0;
    for (size_t k = 0; k <= kmax; ++k) acc += x[i - k] * h[k];
    out[i] = acc;
  }
  return out;
}

std::vector<double> convolve_overlap_add(std::span<const double> x,
                                         std::span<const double> h) {
  const size_t m = h.size();
  // Block FFT large enough that each block contributes a full linear
  // convolution segment: block of L input samples needs L + m - 1 points.
  const size_t n_fft = next_pow2(std::max<size_t>(4 * m, 1024));
  const size_t block = n_fft - (m - 1);

  std::vector<std::complex<double>> hf(n_fft, {0.0, 0.0});
  for (size_t i = 0; i < m; ++i) hf[i] = {h[i], 0.0};
  fft_complex(hf, false);

  std::vector<double> out(x.size(), 0.0);
  std::vector<std::complex<double>> buf(n_fft);
  for (size_t start = 0; start < x.size(); start += block) {
    const size_t len = std::min(block, x.size() - start);
    std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
    for (size_t i = 0; i < len; ++i) buf[i] = {x[start + i], 0.0};
    fft_complex(buf, false);
    for (size_t i = 0; i < n_fft; ++i) buf[i] *= hf[i];
    fft_complex(buf, true);
    const size_t out_len = std::min(x.size() - start, len + m - 1);
    for (size_t i = 0; i < out_len; ++i) out[start + i] += buf[i].real();
  }
  return out;
}

}  // namespace

std::vector<double> convolve(std::span<const double> x,
                             std::span<const double> h) {
  if (x.empty()) throw RangeError("convolve: empty signal");
  if (h.empty()) throw RangeError("convolve: empty kernel");
  if (h.size() <= kDirectKernelLimit) return convolve_direct(x, h);
  return convolve_overlap_add(x, h);
}

}  // namespace spoofkit
