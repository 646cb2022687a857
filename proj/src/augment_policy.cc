// src/augment_policy.cc

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

#include <algorithm>
#include <cmath>
#include <utility>

#include "spoofkit/augment.h"
#include "spoofkit/wav_io.h"

namespace spoofkit {

namespace {

struct KindName {
  TransformKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {TransformKind::kRir, "rir"},
    {TransformKind::kRawBoostLnl, "rawboost_lnl"},
    {TransformKind::kRawBoostSsi, "rawboost_ssi"},
    {TransformKind::kRawBoostIsd, "rawboost_isd"},
    {TransformKind::kCompandALaw, "compand_alaw"},
    {TransformKind::kCompandMuLaw, "compand_mulaw"},
    {TransformKind::kTimeMask, "time_mask"},
    {TransformKind::kAmplitudeMix, "amplitude_mix"},
    {TransformKind::kAddColorNoise, "add_color_noise"},
    {TransformKind::kAddGaussianNoise, "add_gaussian_noise"},
    {TransformKind::kAddGaussianSnr, "add_gaussian_snr"},
    {TransformKind::kBandPassFilter, "band_pass_filter"},
    {TransformKind::kBandStopFilter, "band_stop_filter"},
    {TransformKind::kHighPassFilter, "high_pass_filter"},
    {TransformKind::kHighShelfFilter, "high_shelf_filter"},
    {TransformKind::kLowPassFilter, "low_pass_filter"},
    {TransformKind::kLowShelfFilter, "low_shelf_filter"},
    {TransformKind::kPeakingFilter, "peaking_filter"},
    {TransformKind::kAirAbsorption, "air_absorption"},
    {TransformKind::kAliasing, "aliasing"},
    {TransformKind::kShift, "shift"},
    {TransformKind::kPitchShift, "pitch_shift"},
    {TransformKind::kPolarityInversion, "polarity_inversion"},
    {TransformKind::kTimeStretch, "time_stretch"},
    {TransformKind::kTanhDistortion, "tanh_distortion"},
};

// Uniform draw on [lo, hi]; a pinned range (lo == hi) returns lo without
// consuming the stream, so pinning never disturbs later draws.
double draw(const ParamRange& r, Rng& rng) {
  if (r.lo == r.hi) return r.lo;
  std::uniform_real_distribution<double> dist(r.lo, r.hi);
  return dist(rng);
}

long long draw_round(const ParamRange& r, Rng& rng) {
  return std::llround(draw(r, rng));
}

int draw_odd(const ParamRange& r, Rng& rng) {
  int o = static_cast<int>(std::llround(draw(r, rng)));
  if (o < 1) o = 1;
  if (o % 2 == 0) ++o;
  return o;
}

double clamp_fc(double f_c, int sample_rate) {
  return std::min(f_c, 0.45 * static_cast<double>(sample_rate));
}

}  // namespace

std::string transform_kind_to_string(TransformKind kind) {
  for (const KindName& kn : kKindNames)
    if (kn.kind == kind) return kn.name;
  throw ConfigError("unknown transform kind enum value");
}

TransformKind transform_kind_from_string(const std::string& name) {
  for (const KindName& kn : kKindNames)
    if (name == kn.name) return kn.kind;
  throw ConfigError("unknown transform kind: '" + name + "'");
}

std::vector<TransformKind> all_transform_kinds() {
  std::vector<TransformKind> kinds;
  for (const KindName& kn : kKindNames) kinds.push_back(kn.kind);
  return kinds;
}

TransformSpec default_transform_spec(TransformKind kind) {
  TransformSpec spec;
  spec.kind = kind;
  auto& p = spec.params;
  switch (kind) {
    case TransformKind::kRir:
      p["wet"] = {0.2, 0.8};
      break;
    case TransformKind::kRawBoostLnl:
      p["n_filters"] = {1.0, 5.0};
      p["f_c"] = {20.0, 8000.0};
      p["q"] = {0.5, 5.0};
      p["gain_db"] = {-12.0, 0.0};
      p["nl_amount"] = {0.0, 0.3};
      p["nl_order"] = {3.0, 7.0};
      break;
    case TransformKind::kRawBoostSsi:
      p["snr_db"] = {10.0, 40.0};
      p["exponent"] = {0.0, 0.0};
      break;
    case TransformKind::kRawBoostIsd:
      p["p"] = {0.0, 0.2};
      p["gain"] = {1.0, 1.0};
      break;
    case TransformKind::kCompandALaw:
    case TransformKind::kCompandMuLaw:
    case TransformKind::kPolarityInversion:
      break;
    case TransformKind::kTimeMask:
      p["frac"] = {0.2, 0.5};
      break;
    case TransformKind::kAmplitudeMix:
      p["gamma"] = {0.1, 0.5};
      p["n_fft"] = {512.0, 512.0};
      break;
    case TransformKind::kAddColorNoise:
      p["snr_db"] = {3.0, 30.0};
      p["exponent"] = {0.0, 2.0};
      break;
    case TransformKind::kAddGaussianNoise:
      p["sigma"] = {0.001, 0.015};
      break;
    case TransformKind::kAddGaussianSnr:
      p["snr_db"] = {10.0, 40.0};
      break;
    case TransformKind::kBandPassFilter:
      p["f_c"] = {200.0, 4000.0};
      p["q"] = {0.5, 2.0};
      break;
    case TransformKind::kBandStopFilter:
      p["f_c"] = {200.0, 4000.0};
      p["q"] = {1.0, 5.0};
      break;
    case TransformKind::kHighPassFilter:
      p["f_c"] = {20.0, 2400.0};
      p["q"] = {0.7071067811865476, 0.7071067811865476};
      break;
    case TransformKind::kLowPassFilter:
      p["f_c"] = {150.0, 7500.0};
      p["q"] = {0.7071067811865476, 0.7071067811865476};
      break;
    case TransformKind::kHighShelfFilter:
      p["f_c"] = {300.0, 7500.0};
      p["q"] = {0.7071067811865476, 0.7071067811865476};
      p["gain_db"] = {-18.0, 18.0};
      break;
    case TransformKind::kLowShelfFilter:
      p["f_c"] = {50.0, 4000.0};
      p["q"] = {0.7071067811865476, 0.7071067811865476};
      p["gain_db"] = {-18.0, 18.0};
      break;
    case TransformKind::kPeakingFilter:
      p["f_c"] = {50.0, 7500.0};
      p["q"] = {0.5, 5.0};
      p["gain_db"] = {-24.0, 24.0};
      break;
    case TransformKind::kAirAbsorption:
      p["f_c"] = {3000.0, 7000.0};
      break;
    case TransformKind::kAliasing:
      p["target_sr"] = {4000.0, 8000.0};
      break;
    case TransformKind::kShift:
      p["frac"] = {-0.25, 0.25};
      break;
    case TransformKind::kPitchShift:
      p["semitones"] = {-2.0, 2.0};
      break;
    case TransformKind::kTimeStretch:
      p["rate"] = {0.9, 1.1};
      break;
    case TransformKind::kTanhDistortion:
      p["drive"] = {1.0, 8.0};
      break;
  }
  return spec;
}

void validate_transform_spec(const TransformSpec& spec) {
  const TransformSpec defaults = default_transform_spec(spec.kind);
  for (const auto& [name, range] : spec.params) {
    if (defaults.params.find(name) == defaults.params.end())
      throw ConfigError("transform '" + transform_kind_to_string(spec.kind) +
                        "' has no parameter '" + name + "'");
    if (!(range.lo <= range.hi) || !std::isfinite(range.lo) ||
        !std::isfinite(range.hi))
      throw ConfigError("transform '" + transform_kind_to_string(spec.kind) +
                        "': parameter '" + name + "' has an invalid range");
  }
}

void validate_policy(const AugmentPolicy& policy) {
  switch (policy.kind) {
    case PolicyKind::kSingle:
      if (policy.stages.size() != 1 || policy.stages[0].choices.size() != 1)
        throw ConfigError(
            "single policy must have exactly one stage with one transform");
      break;
    case PolicyKind::kRandom:
      if (policy.stages.size() != 1 || policy.stages[0].choices.size() < 2)
        throw ConfigError(
            "random policy must have one stage with at least two choices");
      break;
    case PolicyKind::kCascade:
      if (policy.stages.size() < 2)
        throw ConfigError("cascade policy must have at least two stages");
      for (const PolicyStage& s : policy.stages)
        if (s.choices.empty())
          throw ConfigError("cascade policy has an empty stage");
      break;
  }
  for (const PolicyStage& s : policy.stages)
    for (const TransformSpec& t : s.choices) validate_transform_spec(t);
}

RirBank::RirBank(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec))
    throw ConfigError("impulse-response directory not found: " + dir.string());
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".wav")
      paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) irs_.push_back(read_wav(p));
  if (irs_.empty())
    throw ConfigError("no .wav impulse responses in " + dir.string());
}

const Waveform& RirBank::pick(Rng& rng) const {
  if (irs_.size() == 1) return irs_[0];
  std::uniform_int_distribution<size_t> dist(0, irs_.size() - 1);
  return irs_[dist(rng)];
}

// Parameter draws happen in a fixed, documented order per kind so that a
// given (spec, seed) pair always produces the same waveform.
Waveform apply_transform(const TransformSpec& spec, const Waveform& w,
                         const AugmentContext& ctx, Rng& rng) {
  validate_transform_spec(spec);
  TransformSpec full = default_transform_spec(spec.kind);
  for (const auto& [name, range] : spec.params) full.params[name] = range;
  full.rir_dir = spec.rir_dir;
  const auto& p = full.params;

  switch (full.kind) {
    case TransformKind::kRir: {
      if (ctx.rir_bank == nullptr || ctx.rir_bank->size() == 0)
        throw ConfigError("rir transform requires an impulse-response bank");
      const Waveform& ir = ctx.rir_bank->pick(rng);
      const double wet = draw(p.at("wet"), rng);
      return rir_mix_at(w, ir, wet);
    }
    case TransformKind::kRawBoostLnl: {
      const long long n = std::max<long long>(0, draw_round(p.at("n_filters"), rng));
      std::vector<BiquadCoeffs> notches;
      for (long long i = 0; i < n; ++i) {
        const double f_c = clamp_fc(draw(p.at("f_c"), rng), w.sample_rate);
        const double q = draw(p.at("q"), rng);
        const double gain_db = draw(p.at("gain_db"), rng);
        notches.push_back(biquad_design(BiquadKind::kPeaking, f_c, q, gain_db,
                                        w.sample_rate));
      }
      const double amount = draw(p.at("nl_amount"), rng);
      const int order = draw_odd(p.at("nl_order"), rng);
      return rawboost_lnl_at(w, notches, amount, order);
    }
    case TransformKind::kRawBoostSsi: {
      const double snr_db = draw(p.at("snr_db"), rng);
      const double exponent = draw(p.at("exponent"), rng);
      const Waveform noise =
          colored_noise(w.samples.size(), w.sample_rate, exponent, rng);
      return add_noise_at_snr(w, noise, snr_db);
    }
    case TransformKind::kRawBoostIsd: {
      const double prob = draw(p.at("p"), rng);
      const double gain = draw(p.at("gain"), rng);
      return rawboost_isd_at(w, prob, gain, rng);
    }
    case TransformKind::kCompandALaw:
      return compand(w, CompandLaw::kALaw);
    case TransformKind::kCompandMuLaw:
      return compand(w, CompandLaw::kMuLaw);
    case TransformKind::kTimeMask: {
      // Two-stage law: a maximum mask fraction is drawn from the configured
      // range, the actual mask length is uniform below it, and the start is
      // uniform over positions keeping the mask inside the signal.  The
      // floor keeps the masked fraction strictly below the range's upper
      // bound (0.5 by default).
      const double max_frac = draw(p.at("frac"), rng);
      if (!(max_frac >= 0.0 && max_frac <= 1.0))
        throw ConfigError("time_mask: frac must lie in [0, 1]");
      const size_t len = w.samples.size();
      if (max_frac == 0.0) return w;
      std::uniform_real_distribution<double> t_frac(0.0, max_frac);
      const size_t t = static_cast<size_t>(
          std::floor(t_frac(rng) * static_cast<double>(len)));
      if (t == 0 || t >= len) return w;
      std::uniform_int_distribution<size_t> start(0, len - t - 1);
      return time_mask_at(w, start(rng), t);
    }
    case TransformKind::kAmplitudeMix: {
      const double gamma = draw(p.at("gamma"), rng);
      StftConfig cfg;
      cfg.n_fft = static_cast<size_t>(draw_round(p.at("n_fft"), rng));
      std::optional<Waveform> partner;
      if (ctx.partner) partner = ctx.partner(rng);
      if (!partner.has_value()) {
        if (ctx.mix_degraded != nullptr) ++*ctx.mix_degraded;
        return w;
      }
      return amplitude_mix_at(w, fit_length(*partner, w.samples.size()),
                              gamma, cfg);
    }
    case TransformKind::kAddColorNoise: {
      const double snr_db = draw(p.at("snr_db"), rng);
      const double exponent = draw(p.at("exponent"), rng);
      const Waveform noise =
          colored_noise(w.samples.size(), w.sample_rate, exponent, rng);
      return add_noise_at_snr(w, noise, snr_db);
    }
    case TransformKind::kAddGaussianNoise: {
      const double sigma = draw(p.at("sigma"), rng);
      if (sigma < 0.0) throw ConfigError("add_gaussian_noise: sigma < 0");
      if (sigma == 0.0) return w;
      std::normal_distribution<double> gauss(0.0, sigma);
      Waveform out = w;
      for (double& v : out.samples) v += gauss(rng);
      return out;
    }
    case TransformKind::kAddGaussianSnr: {
      const double snr_db = draw(p.at("snr_db"), rng);
      std::normal_distribution<double> gauss(0.0, 1.0);
      Waveform noise;
      noise.sample_rate = w.sample_rate;
      noise.samples.resize(w.samples.size());
      for (double& v : noise.samples) v = gauss(rng);
      return add_noise_at_snr(w, noise, snr_db);
    }
    case TransformKind::kBandPassFilter:
    case TransformKind::kBandStopFilter:
    case TransformKind::kHighPassFilter:
    case TransformKind::kLowPassFilter:
    case TransformKind::kHighShelfFilter:
    case TransformKind::kLowShelfFilter:
    case TransformKind::kPeakingFilter: {
      const double f_c = clamp_fc(draw(p.at("f_c"), rng), w.sample_rate);
      const double q = draw(p.at("q"), rng);
      double gain_db = 0.0;
      if (p.count("gain_db")) gain_db = draw(p.at("gain_db"), rng);
      BiquadKind bk;
      switch (full.kind) {
        case TransformKind::kBandPassFilter: bk = BiquadKind::kBandPass; break;
        case TransformKind::kBandStopFilter: bk = BiquadKind::kBandStop; break;
        case TransformKind::kHighPassFilter: bk = BiquadKind::kHighPass; break;
        case TransformKind::kLowPassFilter: bk = BiquadKind::kLowPass; break;
        case TransformKind::kHighShelfFilter: bk = BiquadKind::kHighShelf; break;
        case TransformKind::kLowShelfFilter: bk = BiquadKind::kLowShelf; break;
        default: bk = BiquadKind::kPeaking; break;
      }
      const BiquadCoeffs c = biquad_design(bk, f_c, q, gain_db, w.sample_rate);
      Waveform out = w;
      out.samples = biquad_apply(c, out.samples);
      return out;
    }
    case TransformKind::kAirAbsorption:
      return air_absorption_at(w, draw(p.at("f_c"), rng));
    case TransformKind::kAliasing:
      return aliasing_at(
          w, static_cast<int>(draw_round(p.at("target_sr"), rng)));
    case TransformKind::kShift: {
      const double frac = draw(p.at("frac"), rng);
      return shift_circular(
          w, std::llround(frac * static_cast<double>(w.samples.size())));
    }
    case TransformKind::kPitchShift:
      return pitch_shift(w, draw(p.at("semitones"), rng));
    case TransformKind::kPolarityInversion:
      return polarity_invert(w);
    case TransformKind::kTimeStretch:
      return time_stretch(w, draw(p.at("rate"), rng));
    case TransformKind::kTanhDistortion:
      return tanh_distort(w, draw(p.at("drive"), rng));
  }
  throw ConfigError("unhandled transform kind");
}

Waveform apply_policy(const AugmentPolicy& policy, const Waveform& w,
                      const AugmentContext& ctx, Rng& rng) {
  validate_policy(policy);
  Waveform cur = w;
  for (const PolicyStage& stage : policy.stages) {
    size_t idx = 0;
    if (stage.choices.size() > 1) {
      std::uniform_int_distribution<size_t> pick(0, stage.choices.size() - 1);
      idx = pick(rng);
    }
    cur = apply_transform(stage.choices[idx], cur, ctx, rng);
  }
  return cur;
}

}  // namespace spoofkit
