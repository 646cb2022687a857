// src/resample.cc

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

#include "spoofkit/resample.h"

#include <cmath>

namespace spoofkit {

Waveform resample_linear(const Waveform& w, int new_sr) {
  if (new_sr <= 0) throw RangeError("resample_linear: bad target rate");
  if (w.samples.empty()) throw RangeError("resample_linear: empty waveform");
  if (new_sr == w.sample_rate) return w;

  const size_t in_len = w.samples.size();
  const double ratio = static_cast<double>(w.sample_rate) / new_sr;
  const size_t out_len = static_cast<size_t>(std::llround(
      static_cast<double>(in_len) * new_sr / w.sample_rate));

  Waveform out;
  out.sample_rate = new_sr;
  out.samples.resize(std::max<size_t>(out_len, 1));
  for (size_t j = 0; j < out.samples.size(); ++j) {
    const double pos = static_cast<double>(j) * ratio;
    const size_t i0 = std::min(static_cast<size_t>(pos), in_len - 1);
    const size_t i1 = std::min(i0 + 1, in_len - 1);
    const double frac = pos - static_cast<double>(i0);
    out.samples[j] = w.samples[i0] * (1.0 - frac) + w.samples[i1] * frac;
  }
  return out;
}

}  // namespace spoofkit
