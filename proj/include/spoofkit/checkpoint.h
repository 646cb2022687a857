// include/spoofkit/checkpoint.h

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

#ifndef SPOOFKIT_CHECKPOINT_H_
#define SPOOFKIT_CHECKPOINT_H_

#include <filesystem>
#include <vector>

#include "spoofkit/net.h"

namespace spoofkit {

struct Checkpoint {
  ModelSpec spec;
  std::vector<double> theta;
};

// Binary format (all little-endian):
//   magic "SPFKIT01" | u32 n_widths | u32 widths[] | f64 leaky_slope |
//   u64 param_count | f64 params[] | u32 crc32 over all preceding bytes
// Writes go to a temporary file that is renamed into place, so a crashed
// run never leaves a half-written checkpoint under the final name.
void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);

// Verifies magic, structural sanity, and the CRC; throws FormatError on any
// mismatch (truncation, corruption, future versions).
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace spoofkit

#endif  // SPOOFKIT_CHECKPOINT_H_
