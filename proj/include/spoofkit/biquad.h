// include/spoofkit/biquad.h

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

#ifndef SPOOFKIT_BIQUAD_H_
#define SPOOFKIT_BIQUAD_H_

#include <complex>
#include <span>
#include <vector>

#include "spoofkit/common.h"

namespace spoofkit {

// The classic second-order audio EQ sections.  Band-pass is the
// constant-0-dB-peak-gain variant; band-stop is the notch.
enum class BiquadKind {
  kLowPass,
  kHighPass,
  kBandPass,
  kBandStop,
  kLowShelf,
  kHighShelf,
  kPeaking,
};

// Normalized so a0 == 1:  y[n] = b0 x[n] + b1 x[n-1] + b2 x[n-2]
//                                - a1 y[n-1] - a2 y[n-2].
struct BiquadCoeffs {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

// Cookbook design.  gain_db only affects the shelf and peaking kinds.
// Requires 0 < f_c < sr/2 and q > 0; the result is checked for pole
// stability (|a2| < 1 and |a1| < 1 + a2) and a NumericError is raised if a
// parameter combination lands on or outside the unit circle.
BiquadCoeffs biquad_design(BiquadKind kind, double f_c, double q,
                           double gain_db, int sample_rate);

// Direct-form-II-transposed filtering with zero initial state.
std::vector<double> biquad_apply(const BiquadCoeffs& c,
                                 std::span<const double> x);

// Transfer-function magnitude |H(e^{j 2 pi f / sr})|; used by probe tests
// and by analytic attenuation checks.
double biquad_magnitude(const BiquadCoeffs& c, double freq_hz, int sample_rate);

}  // namespace spoofkit

#endif  // SPOOFKIT_BIQUAD_H_
