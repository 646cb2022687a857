// include/spoofkit/resample.h

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

#ifndef SPOOFKIT_RESAMPLE_H_
#define SPOOFKIT_RESAMPLE_H_

#include "spoofkit/waveform.h"

namespace spoofkit {

// Sample-rate conversion by linear interpolation (deliberately without an
// anti-aliasing filter; the aliasing augmentation depends on the fold-over).
// Output length is round(len * new_sr / sr); positions past the last input
// sample hold its value.  new_sr == sr returns the input unchanged.
Waveform resample_linear(const Waveform& w, int new_sr);

}  // namespace spoofkit

#endif  // SPOOFKIT_RESAMPLE_H_
