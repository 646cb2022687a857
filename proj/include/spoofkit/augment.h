// include/spoofkit/augment.h

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

#ifndef SPOOFKIT_AUGMENT_H_
#define SPOOFKIT_AUGMENT_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spoofkit/biquad.h"
#include "spoofkit/stft.h"
#include "spoofkit/waveform.h"

namespace spoofkit {

// ---------------------------------------------------------------------------
// Transform catalog
//
// Every transform is length-preserving and pure: output depends only on the
// input waveform and the RNG stream it is handed.  Randomized parameters are
// drawn per call (i.e. per utterance), so reproducibility is controlled by
// how the caller derives the RNG (see derive_seed in common.h).
// ---------------------------------------------------------------------------

enum class TransformKind {
  kRir,
  kRawBoostLnl,
  kRawBoostSsi,
  kRawBoostIsd,
  kCompandALaw,
  kCompandMuLaw,
  kTimeMask,
  kAmplitudeMix,
  kAddColorNoise,
  kAddGaussianNoise,
  kAddGaussianSnr,
  kBandPassFilter,
  kBandStopFilter,
  kHighPassFilter,
  kHighShelfFilter,
  kLowPassFilter,
  kLowShelfFilter,
  kPeakingFilter,
  kAirAbsorption,
  kAliasing,
  kShift,
  kPitchShift,
  kPolarityInversion,
  kTimeStretch,
  kTanhDistortion,
};

std::string transform_kind_to_string(TransformKind kind);
TransformKind transform_kind_from_string(const std::string& name);
std::vector<TransformKind> all_transform_kinds();

// Closed interval a parameter is drawn from (uniformly).  lo == hi pins the
// parameter, which is how tests and configs force deterministic behavior.
struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const ParamRange&) const = default;
};

// A transform plus the ranges its per-utterance parameters are drawn from.
// default_transform_spec() fills every parameter the kind understands;
// configs may override any subset.  rir_dir is only used by kRir.
struct TransformSpec {
  TransformKind kind = TransformKind::kPolarityInversion;
  std::map<std::string, ParamRange> params;
  std::string rir_dir;

  bool operator==(const TransformSpec&) const = default;
};

TransformSpec default_transform_spec(TransformKind kind);

// Throws ConfigError when a range is inverted or a parameter name is not
// understood by the kind.
void validate_transform_spec(const TransformSpec& spec);

// ---------------------------------------------------------------------------
// Policies: how transforms are scheduled per utterance.
//   single  - one stage holding exactly one transform
//   random  - one stage; each utterance uniformly picks one of >= 2 choices
//   cascade - >= 2 stages applied left to right; each stage is single/random
// ---------------------------------------------------------------------------

enum class PolicyKind { kSingle, kRandom, kCascade };

struct PolicyStage {
  // One spec -> deterministic choice; several -> uniform pick per utterance.
  std::vector<TransformSpec> choices;

  bool operator==(const PolicyStage&) const = default;
};

struct AugmentPolicy {
  PolicyKind kind = PolicyKind::kSingle;
  std::vector<PolicyStage> stages;

  bool operator==(const AugmentPolicy&) const = default;
};

void validate_policy(const AugmentPolicy& policy);

// Impulse-response bank: a directory of mono WAV files, listed in sorted
// order for determinism and cached on load.  Throws ConfigError if empty.
class RirBank {
 public:
  explicit RirBank(const std::filesystem::path& dir);

  size_t size() const { return irs_.size(); }
  const Waveform& at(size_t i) const { return irs_.at(i); }
  const Waveform& pick(Rng& rng) const;

 private:
  std::vector<Waveform> irs_;
};

// Facilities a transform may need beyond the waveform itself.  `partner`
// supplies a same-speaker, same-label waveform for spectrum mixing; when it
// is absent or returns nothing the transform degrades to identity and
// `mix_degraded` (if set) is incremented so callers can report it.
struct AugmentContext {
  const RirBank* rir_bank = nullptr;
  std::function<std::optional<Waveform>(Rng&)> partner;
  size_t* mix_degraded = nullptr;
};

// Samples the spec's parameters from the RNG and applies the transform.
Waveform apply_transform(const TransformSpec& spec, const Waveform& w,
                         const AugmentContext& ctx, Rng& rng);

// Runs a full policy.  Stage choices and stage parameters consume the same
// RNG stream in order, which makes a cascade equivalent to manually applying
// its stages one by one with that stream.
Waveform apply_policy(const AugmentPolicy& policy, const Waveform& w,
                      const AugmentContext& ctx, Rng& rng);

// ---------------------------------------------------------------------------
// Deterministic cores.  The sampling wrappers above reduce to these with
// drawn parameters; tests pin parameters directly.
// ---------------------------------------------------------------------------

// Wet/dry reverberation mix: y = (1 - wet) * x + wet * (x * ir / ||ir||_2),
// truncated to len(x), then peak-rescaled only if |y| exceeds full scale.
Waveform rir_mix_at(const Waveform& w, const Waveform& ir, double wet);

// Zeroes samples [t0, t0 + t); everything else is untouched (bit-identical).
Waveform time_mask_at(const Waveform& w, size_t t0, size_t t);

enum class CompandLaw { kALaw, kMuLaw };

// Compressor curves F: [-1,1] -> [-1,1]; odd, monotone, F(0)=0, F(1)=1.
// A-law uses A = 87.6, mu-law uses mu = 255.
double compand_compress(double x, CompandLaw law);
double compand_expand(double y, CompandLaw law);

// Compress, quantize to 256 uniform levels on the compressed domain
// (round-to-nearest code in [-128, 127] at step 1/128, so full scale
// saturates one code early, mirroring 16-bit PCM), expand back.
Waveform compand(const Waveform& w, CompandLaw law);

// Convolutive + nonlinear distortion: a chain of parametric dips (peaking
// EQ with negative gain) followed by y = (1-amount)*x + amount*x^order.
Waveform rawboost_lnl_at(const Waveform& w,
                         const std::vector<BiquadCoeffs>& notches,
                         double nl_amount, int nl_order);

// Additive stationary noise scaled so the signal-to-noise ratio is exactly
// snr_db (measured against the given noise's own power).  +inf is identity.
Waveform add_noise_at_snr(const Waveform& w, const Waveform& noise,
                          double snr_db);

// Signal-dependent impulsive noise: each sample independently selected with
// probability p gets x_i += gain * |x_i| * u, u ~ U[-1, 1].
Waveform rawboost_isd_at(const Waveform& w, double p, double gain, Rng& rng);

// STFT-domain mix: magnitude (1-gamma)|S1| + gamma|S2| with the phase of S1.
// Both inputs must share length and rate.  Internally pads by n_fft so every
// original sample has full window coverage (gamma = 0 returns w1 within 1e-6).
Waveform amplitude_mix_at(const Waveform& w1, const Waveform& w2, double gamma,
                          const StftConfig& cfg);

// 1/f^exponent Gaussian noise, normalized to unit average power.
Waveform colored_noise(size_t len, int sample_rate, double exponent, Rng& rng);

Waveform shift_circular(const Waveform& w, long long amount);
Waveform polarity_invert(const Waveform& w);

// y = tanh(drive * x) / tanh(drive); drive -> 0 limit is the identity.
Waveform tanh_distort(const Waveform& w, double drive);

// Resample-based pitch shift (changes pitch by 2^(semitones/12), then
// truncates or tiles back to the original length).
Waveform pitch_shift(const Waveform& w, double semitones);

// Overlap-add time stretch by `rate` (output re-fit to the input length).
// rate > 1 compresses time; pitch is preserved up to OLA artifacts.
Waveform time_stretch(const Waveform& w, double rate);

// Round trip through a lower sample rate with no anti-aliasing filter.
Waveform aliasing_at(const Waveform& w, int low_sr);

// First-order-style high-frequency loss: a low-pass biquad at f_c.
Waveform air_absorption_at(const Waveform& w, double f_c);

// ---------------------------------------------------------------------------
// Mixup (batch-level pairing; operates on waveform + label jointly).
// ---------------------------------------------------------------------------

std::pair<Waveform, SoftLabel> mixup_at(const Waveform& w1, const SoftLabel& y1,
                                        const Waveform& w2, const SoftLabel& y2,
                                        double lambda);

// lambda ~ Beta(sigma, sigma); sigma = 1 reduces to U[0, 1].
std::pair<Waveform, SoftLabel> mixup(const Waveform& w1, const SoftLabel& y1,
                                     const Waveform& w2, const SoftLabel& y2,
                                     double sigma, Rng& rng);

double sample_beta(double a, double b, Rng& rng);

}  // namespace spoofkit

#endif  // SPOOFKIT_AUGMENT_H_
