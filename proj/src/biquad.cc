// src/biquad.cc

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

#include "spoofkit/biquad.h"

#include <cmath>
#include <numbers>

namespace spoofkit {

BiquadCoeffs biquad_design(BiquadKind kind, double f_c, double q,
                           double gain_db, int sample_rate) {
  if (sample_rate <= 0) throw RangeError("biquad_design: bad sample rate");
  if (!(f_c > 0.0 && f_c < 0.5 * sample_rate))
    throw RangeError("biquad_design: f_c must lie in (0, sr/2), got " +
                     std::to_string(f_c));
  if (!(q > 0.0)) throw RangeError("biquad_design: q must be positive");

  const double w0 = 2.0 * std::numbers::pi * f_c / sample_rate;
  const double cw = std::cos(w0);
  const double sw = std::sin(w0);
  const double alpha = sw / (2.0 * q);
  const double big_a = std::pow(10.0, gain_db / 40.0);

  double b0, b1, b2, a0, a1, a2;
  switch (kind) {
    case BiquadKind::kLowPass:
      b0 = (1.0 - cw) / 2.0;
      b1 = 1.0 - cw;
      b2 = (1.0 - cw) / 2.0;
      a0 = 1.0 + alpha;
      a1 = -2.0 * cw;
      a2 = 1.0 - alpha;
      break;
    case BiquadKind::kHighPass:
      b0 = (1.0 + cw) / 2.0;
      b1 = -(1.0 + cw);
      b2 = (1.0 + cw) / 2.0;
      a0 = 1.0 + alpha;
      a1 = -2.0 * cw;
      a2 = 1.0 - alpha;
      break;
    case BiquadKind::kBandPass:  // constant 0 dB peak gain
      b0 = alpha;
      b1 = 0.0;
      b2 = -alpha;
      a0 = 1.0 + alpha;
      a1 = -2.0 * cw;
      a2 = 1.0 - alpha;
      break;
    case BiquadKind::kBandStop:
      b0 = 1.0;
      b1 = -2.0 * cw;
      b2 = 1.0;
      a0 = 1.0 + alpha;
      a1 = -2.0 * cw;
      a2 = 1.0 - alpha;
      break;
    case BiquadKind::kPeaking:
      b0 = 1.0 + alpha * big_a;
      b1 = -2.0 * cw;
      b2 = 1.0 - alpha * big_a;
      a0 = 1.0 + alpha / big_a;
      a1 = -2.0 * cw;
      a2 = 1.0 - alpha / big_a;
      break;
    case BiquadKind::kLowShelf: {
      const double two_sqrt_a_alpha = 2.0 * std::sqrt(big_a) * alpha;
      b0 = big_a * ((big_a + 1) - (big_a - 1) * cw + two_sqrt_a_alpha);
      b1 = 2.0 * big_a * ((big_a - 1) - (big_a + 1) * cw);
      b2 = big_a * ((big_a + 1) - (big_a - 1) * cw - two_sqrt_a_alpha);
      a0 = (big_a + 1) + (big_a - 1) * cw + two_sqrt_a_alpha;
      a1 = -2.0 * ((big_a - 1) + (big_a + 1) * cw);
      a2 = (big_a + 1) + (big_a - 1) * cw - two_sqrt_a_alpha;
      break;
    }
    case BiquadKind::kHighShelf: {
      const double two_sqrt_a_alpha = 2.0 * std::sqrt(big_a) * alpha;
      b0 = big_a * ((big_a + 1) + (big_a - 1) * cw + two_sqrt_a_alpha);
      b1 = -2.0 * big_a * ((big_a - 1) + (big_a + 1) * cw);
      b2 = big_a * ((big_a + 1) + (big_a - 1) * cw - two_sqrt_a_alpha);
      a0 = (big_a + 1) - (big_a - 1) * cw + two_sqrt_a_alpha;
      a1 = 2.0 * ((big_a - 1) - (big_a + 1) * cw);
      a2 = (big_a + 1) - (big_a - 1) * cw - two_sqrt_a_alpha;
      break;
    }
    default:
      throw ConfigError("biquad_design: unknown kind");
  }

  BiquadCoeffs c;
  c.b0 = b0 / a0;
  c.b1 = b1 / a0;
  c.b2 = b2 / a0;
  c.a1 = a1 / a0;
  c.a2 = a2 / a0;

  // Pole stability (poles strictly inside the unit circle).
  if (!(std::abs(c.a2) < 1.0 && std::abs(c.a1) < 1.0 + c.a2))
    throw NumericError("biquad_design: unstable section (f_c=" +
                       std::to_string(f_c) + ", q=" + std::to_string(q) + ")");
  return c;
}

std::vector<double> biquad_apply(const BiquadCoeffs& c,
                                 std::span<const double> x) {
  std::vector<double> y(x.size());
  double s1 = 0.0, s2 = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double in = x[i];
    const double out = c.b0 * in + s1;
    s1 = c.b1 * in - c.a1 * out + s2;
    s2 = c.b2 * in - c.a2 * out;
    y[i] = out;
  }
  return y;
}

double biquad_magnitude(const BiquadCoeffs& c, double freq_hz,
                        int sample_rate) {
  const double w = 2.0 * std::numbers::pi * freq_hz / sample_rate;
  const std::complex<double> z1 = std::polar(1.0, -w);
  const std::complex<double> z2 = z1 * z1;
  const std::complex<double> num = c.b0 + c.b1 * z1 + c.b2 * z2;
  const std::complex<double> den = 1.0 + c.a1 * z1 + c.a2 * z2;
  return std::abs(num / den);
}

}  // namespace spoofkit
