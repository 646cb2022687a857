// include/spoofkit/wav_io.h

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

#ifndef SPOOFKIT_WAV_IO_H_
#define SPOOFKIT_WAV_IO_H_

#include <filesystem>

#include "spoofkit/waveform.h"

namespace spoofkit {

// Reads a RIFF/WAVE file containing 16-bit mono PCM.  Integer sample k maps
// to k / 32768, so the result lies in [-1, 1).  Throws FormatError on a
// malformed container and UnsupportedFormatError for multi-channel or
// non-16-bit-PCM content.
Waveform read_wav(const std::filesystem::path& path);

// Writes 16-bit mono PCM.  Samples must lie in [-1, 1]; anything outside
// raises RangeError rather than clipping silently.  Quantization rounds half
// away from zero; exactly +1.0 saturates to 32767 (one code below the ideal),
// which keeps the round-trip error within 1/32768 per sample.
void write_wav(const Waveform& w, const std::filesystem::path& path);

}  // namespace spoofkit

#endif  // SPOOFKIT_WAV_IO_H_
