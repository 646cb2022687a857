// include/spoofkit/synth.h

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

#ifndef SPOOFKIT_SYNTH_H_
#define SPOOFKIT_SYNTH_H_

#include <filesystem>

#include "spoofkit/waveform.h"

namespace spoofkit {

// Desk-scale dataset generator.  Bona fide trials are multi-harmonic
// vowel-like tones with per-speaker formants, vibrato, and a small noise
// floor; spoof trials run the same voice through randomized tanh
// distortion plus two spectral notches, which separates the classes in
// band-energy features by construction.
struct SynthOptions {
  size_t n_per_class = 200;
  uint64_t seed = 1;
  int sample_rate = 16000;
  size_t length = 16000;  // samples per utterance
  size_t n_speakers = 8;
  // Every 10 indices per class, this many go to the dev split.
  size_t dev_per_ten = 3;
};

struct SynthResult {
  std::filesystem::path all_manifest;
  std::filesystem::path train_manifest;
  std::filesystem::path dev_manifest;
  std::filesystem::path rir_dir;        // three decaying impulse responses
  std::filesystem::path rir_delta_dir;  // one unit impulse (exact identity)
  size_t n_train = 0;
  size_t n_dev = 0;
};

// Writes out_dir/wav/*.wav, three manifests (all/train/dev), and two small
// impulse-response banks.  Byte-identical for identical (options, out_dir).
SynthResult synth_dataset(const std::filesystem::path& out_dir,
                          const SynthOptions& options);

}  // namespace spoofkit

#endif  // SPOOFKIT_SYNTH_H_
