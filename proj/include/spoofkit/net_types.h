// include/spoofkit/net_types.h

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

#ifndef SPOOFKIT_NET_TYPES_H_
#define SPOOFKIT_NET_TYPES_H_

#include <cstddef>
#include <vector>

#include "spoofkit/waveform.h"

namespace spoofkit {

// A feature batch: rows x dim doubles plus one soft label per row.
// Labels are probability vectors over (bona fide, spoof).
struct Batch {
  size_t rows = 0;
  size_t dim = 0;
  std::vector<double> features;  // row-major, rows * dim
  std::vector<SoftLabel> labels;

  std::span<const double> row(size_t r) const {
    return {features.data() + r * dim, dim};
  }
};

// Throws RangeError unless shapes are consistent and every label is a valid
// probability vector (components >= 0, summing to 1 within 1e-9).
void validate_batch(const Batch& batch);

}  // namespace spoofkit

#endif  // SPOOFKIT_NET_TYPES_H_
