// src/stft.cc

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

#include "spoofkit/stft.h"

#include <cmath>
#include <numbers>

#include "spoofkit/fft.h"

namespace spoofkit {

std::vector<double> hann_window(size_t n) {
  std::vector<double> w(n);
  for (size_t i = 0; i < n; ++i)
    w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi *
                                 static_cast<double>(i) /
                                 static_cast<double>(n)));
  return w;
}

StftGrid stft(std::span<const double> x, const StftConfig& cfg) {
  const size_t n_fft = cfg.n_fft;
  const size_t hop = cfg.effective_hop();
  if (!is_power_of_two(n_fft)) throw RangeError("stft: n_fft must be 2^k");
  if (hop == 0 || hop > n_fft) throw RangeError("stft: bad hop");
  if (x.size() < n_fft)
    throw RangeError("stft: signal shorter than one frame");

  const std::vector<double> win = hann_window(n_fft);
  StftGrid grid;
  grid.n_fft = n_fft;
  grid.hop = hop;
  grid.signal_len = x.size();

  std::vector<std::complex<double>> frame(n_fft);
  for (size_t start = 0; start + n_fft <= x.size(); start += hop) {
    for (size_t i = 0; i < n_fft; ++i)
      frame[i] = {x[start + i] * win[i], 0.0};
    fft_complex(frame, /*inverse=*/false);
    grid.frames.push_back(frame);
  }
  return grid;
}

std::vector<double> istft(const StftGrid& grid) {
  if (!is_power_of_two(grid.n_fft) || grid.hop == 0)
    throw RangeError("istft: inconsistent grid");

  const std::vector<double> win = hann_window(grid.n_fft);
  std::vector<double> out(grid.signal_len, 0.0);
  std::vector<double> norm(grid.signal_len, 0.0);

  std::vector<std::complex<double>> frame;
  for (size_t f = 0; f < grid.frames.size(); ++f) {
    if (grid.frames[f].size() != grid.n_fft)
      throw RangeError("istft: frame size mismatch");
    frame = grid.frames[f];
    fft_complex(frame, /*inverse=*/true);
    const size_t start = f * grid.hop;
    for (size_t i = 0; i < grid.n_fft && start + i < out.size(); ++i) {
      out[start + i] += frame[i].real() * win[i];
      norm[start + i] += win[i] * win[i];
    }
  }

  // Where the squared-window mass is negligible (the extreme edges) the
  // signal is unrecoverable; leave those samples at zero.
  constexpr double kNormFloor = 1e-9;
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = norm[i] > kNormFloor ? out[i] / norm[i] : 0.0;
  return out;
}

}  // namespace spoofkit
