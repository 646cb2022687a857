// include/spoofkit/stft.h

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

#ifndef SPOOFKIT_STFT_H_
#define SPOOFKIT_STFT_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "spoofkit/common.h"

namespace spoofkit {

struct StftConfig {
  size_t n_fft = 512;
  size_t hop = 0;  // 0 means the default n_fft / 4 (satisfies COLA with Hann)

  size_t effective_hop() const { return hop == 0 ? n_fft / 4 : hop; }
};

struct StftGrid {
  std::vector<std::vector<std::complex<double>>> frames;  // each n_fft bins
  size_t n_fft = 0;
  size_t hop = 0;
  size_t signal_len = 0;  // istft() reproduces exactly this many samples
};

// Periodic Hann window of length n.
std::vector<double> hann_window(size_t n);

// Windowed frames at offsets 0, hop, 2*hop, ... while a full frame fits.
// Requires x.size() >= n_fft and power-of-two n_fft.
StftGrid stft(std::span<const double> x, const StftConfig& cfg);

// Weighted overlap-add inverse: frames are windowed again on synthesis and
// the output is divided by the accumulated squared window.  Interior samples
// (those covered by a full set of overlapping frames) reconstruct within
// 1e-6; edge samples where the window sum vanishes are left at zero.
std::vector<double> istft(const StftGrid& grid);

}  // namespace spoofkit

#endif  // SPOOFKIT_STFT_H_
