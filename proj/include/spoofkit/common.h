// include/spoofkit/common.h

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

#ifndef SPOOFKIT_COMMON_H_
#define SPOOFKIT_COMMON_H_

#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>

namespace spoofkit {

// Base class for every error this library throws on purpose.  Callers that
// want a single catch-all can catch Error; the subclasses exist so the CLI
// can map failures onto exit codes and so tests can assert the category.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed container or file contents (bad RIFF header, bad checkpoint, ...).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Well-formed file that uses a feature we deliberately do not support
// (multi-channel audio, non-PCM codecs, future checkpoint versions).
class UnsupportedFormatError : public FormatError {
 public:
  using FormatError::FormatError;
};

// A value fell outside its documented domain (sample out of [-1, 1], ...).
class RangeError : public Error {
 public:
  using Error::Error;
};

// Invalid or inconsistent configuration (bad policy shape, missing files).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Non-finite values or other numeric breakdown inside an algorithm.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Filesystem-level failure (cannot open, cannot write).
class IoError : public Error {
 public:
  using Error::Error;
};

// splitmix64: tiny, well-mixed 64-bit hash used for seed derivation.  It is
// the standard finalizer from Vigna's splitmix64 generator.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from a master seed plus up to two
// indices (epoch, utterance).  Each distinct tuple maps to a distinct,
// well-scrambled 64-bit seed, which is what makes per-utterance augmentation
// reproducible regardless of processing order.
inline uint64_t derive_seed(uint64_t master, uint64_t a = 0, uint64_t b = 0) {
  uint64_t s = splitmix64(master);
  s = splitmix64(s ^ (0x9e3779b97f4a7c15ULL + a));
  s = splitmix64(s ^ (0xc2b2ae3d27d4eb4fULL + b));
  return s;
}

// The one double-to-text rendering used by every text artifact: %.17g prints
// enough digits to round-trip an IEEE double exactly, so logs and score files
// are loss-free and byte-stable.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

using Rng = std::mt19937_64;

inline Rng make_rng(uint64_t master, uint64_t a = 0, uint64_t b = 0) {
  return Rng(derive_seed(master, a, b));
}

}  // namespace spoofkit

#endif  // SPOOFKIT_COMMON_H_
