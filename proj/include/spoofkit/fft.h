// include/spoofkit/fft.h

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

#ifndef SPOOFKIT_FFT_H_
#define SPOOFKIT_FFT_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "spoofkit/common.h"

namespace spoofkit {

// Full complex spectrum of a (real) sequence, n_fft bins.  Forward transform
// is unnormalized; the inverse carries the 1/N factor, so ifft(fft(x)) == x.
struct Spectrum {
  std::vector<std::complex<double>> bins;
  size_t n_fft = 0;
};

inline bool is_power_of_two(size_t n) { return n != 0 && (n & (n - 1)) == 0; }
size_t next_pow2(size_t n);

// In-place radix-2 transform of a power-of-two-sized complex buffer.
// inverse=true applies conjugate twiddles and the 1/N scale.
void fft_complex(std::vector<std::complex<double>>& data, bool inverse);

// Real input is zero-padded (or must fit) to n_fft, which has to be a power
// of two >= x.size().  Throws RangeError otherwise.
Spectrum fft(std::span<const double> x, size_t n_fft);

// Inverse of fft(); returns the real part (inputs built from real signals or
// conjugate-symmetric edits come back real up to rounding).
std::vector<double> ifft(const Spectrum& s);

// Linear convolution of x with kernel h, truncated to x.size() (the tail is
// dropped so augmentation stays length-preserving).  Small kernels run the
// direct O(n*m) form; larger ones use FFT overlap-add on power-of-two blocks.
// The two paths agree within 1e-8 absolute on unit-scale audio.
std::vector<double> convolve(std::span<const double> x,
                             std::span<const double> h);

}  // namespace spoofkit

#endif  // SPOOFKIT_FFT_H_
