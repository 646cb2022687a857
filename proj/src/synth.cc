// src/synth.cc

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

#include "spoofkit/synth.h"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "spoofkit/augment.h"
#include "spoofkit/biquad.h"
#include "spoofkit/wav_io.h"

namespace spoofkit {

namespace {

constexpr uint64_t kVoiceTag = 0xB0;
constexpr uint64_t kSpoofTag = 0x50;
constexpr uint64_t kRirTag = 0x44;

void normalize_peak(Waveform* w, double target) {
  double peak = 0.0;
  for (double v : w->samples) peak = std::max(peak, std::abs(v));
  if (peak > 0.0)
    for (double& v : w->samples) v *= target / peak;
}

// A vowel-like tone: harmonics of a vibrato-modulated fundamental, shaped
// by three per-speaker formant bumps, with envelope and a low noise floor.
Waveform synth_voice(const SynthOptions& opt, size_t speaker, Rng& rng) {
  const double two_pi = 2.0 * std::numbers::pi;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const double spk = static_cast<double>(speaker);
  const double f0 = 120.0 + 6.5 * spk + (unit(rng) * 6.0 - 3.0);
  const double formants[3] = {450.0 + 55.0 * spk, 1400.0 + 90.0 * spk,
                              2600.0 + 70.0 * spk};
  const double form_amp[3] = {1.0, 0.7, 0.4};
  const double form_bw[3] = {90.0, 130.0, 170.0};

  constexpr int kHarmonics = 12;
  double phase[kHarmonics];
  double amp[kHarmonics];
  for (int k = 0; k < kHarmonics; ++k) {
    phase[k] = unit(rng) * two_pi;
    const double f = f0 * static_cast<double>(k + 1);
    double a = 0.02;
    for (int j = 0; j < 3; ++j) {
      const double d = (f - formants[j]) / form_bw[j];
      a += form_amp[j] * std::exp(-0.5 * d * d);
    }
    amp[k] = a / (1.0 + static_cast<double>(k) / 6.0);
  }

  const double vib_phase = unit(rng) * two_pi;
  const double am_rate = 2.0 + 2.0 * unit(rng);
  const double am_phase = unit(rng) * two_pi;
  const double sr = static_cast<double>(opt.sample_rate);
  const size_t n = opt.length;
  const size_t attack = std::min<size_t>(n / 2, opt.sample_rate / 20);
  const size_t release = std::min<size_t>(n / 2, opt.sample_rate / 10);

  Waveform w;
  w.sample_rate = opt.sample_rate;
  w.samples.resize(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sr;
    const double f_now =
        f0 * (1.0 + 0.004 * std::sin(two_pi * 5.0 * t + vib_phase));
    double s = 0.0;
    for (int k = 0; k < kHarmonics; ++k) {
      phase[k] += two_pi * f_now * static_cast<double>(k + 1) / sr;
      s += amp[k] * std::sin(phase[k]);
    }
    double env = 1.0;
    if (i < attack)
      env *= static_cast<double>(i) / static_cast<double>(attack);
    if (n - 1 - i < release)
      env *= static_cast<double>(n - 1 - i) / static_cast<double>(release);
    env *= 1.0 + 0.1 * std::sin(two_pi * am_rate * t + am_phase);
    w.samples[i] = env * s + 0.003 * gauss(rng);
  }
  normalize_peak(&w, 0.7);
  return w;
}

Waveform spoofify(const Waveform& voice, Rng& rng) {
  std::uniform_real_distribution<double> drive_dist(3.0, 7.0);
  std::uniform_real_distribution<double> freq_dist(700.0, 5500.0);
  std::uniform_real_distribution<double> gain_dist(-18.0, -10.0);
  std::uniform_real_distribution<double> q_dist(2.0, 6.0);

  Waveform w = tanh_distort(voice, drive_dist(rng));
  for (int j = 0; j < 2; ++j) {
    const BiquadCoeffs c =
        biquad_design(BiquadKind::kPeaking, freq_dist(rng), q_dist(rng),
                      gain_dist(rng), w.sample_rate);
    w.samples = biquad_apply(c, w.samples);
  }
  normalize_peak(&w, 0.7);
  return w;
}

Waveform make_rir(int sample_rate, double tau, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Waveform h;
  h.sample_rate = sample_rate;
  h.samples.resize(400, 0.0);
  h.samples[0] = 1.0;
  for (size_t i = 8; i < h.samples.size(); ++i)
    h.samples[i] =
        0.35 * std::exp(-static_cast<double>(i) / tau) * gauss(rng);
  normalize_peak(&h, 0.9);
  return h;
}

std::string trial_name(Label label, size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s_%04zu",
                label == Label::kBonafide ? "bona" : "spoof", i);
  return buf;
}

}  // namespace

SynthResult synth_dataset(const std::filesystem::path& out_dir,
                          const SynthOptions& opt) {
  if (opt.n_speakers == 0) throw ConfigError("synth: need >= 1 speaker");
  if (opt.length < 256) throw ConfigError("synth: length must be >= 256");
  if (opt.dev_per_ten > 10)
    throw ConfigError("synth: dev_per_ten must be <= 10");

  std::filesystem::create_directories(out_dir / "wav");
  std::filesystem::create_directories(out_dir / "rir");
  std::filesystem::create_directories(out_dir / "rir_delta");

  DatasetManifest all, train, dev;
  all.base_dir = train.base_dir = dev.base_dir = out_dir;

  for (int pass = 0; pass < 2; ++pass) {
    const Label label = pass == 0 ? Label::kBonafide : Label::kSpoof;
    for (size_t i = 0; i < opt.n_per_class; ++i) {
      const size_t speaker = i % opt.n_speakers;
      // The spoof lane re-synthesizes the voice with the bona stream and
      // applies its distortions from a separate stream, so bona/spoof pairs
      // share voice statistics without sharing samples.
      Rng voice_rng = make_rng(opt.seed, kVoiceTag, i);
      Waveform w = synth_voice(opt, speaker, voice_rng);
      if (label == Label::kSpoof) {
        Rng spoof_rng = make_rng(opt.seed, kSpoofTag, i);
        w = spoofify(w, spoof_rng);
      }
      const std::string id = trial_name(label, i);
      const std::string rel = "wav/" + id + ".wav";
      write_wav(w, out_dir / rel);

      ManifestEntry e;
      e.trial_id = id;
      e.path = rel;
      e.label = label;
      e.speaker_id = "spk" + std::to_string(speaker);
      all.entries.push_back(e);
      ((i % 10) < opt.dev_per_ten ? dev : train).entries.push_back(e);
    }
  }

  SynthResult result;
  result.all_manifest = out_dir / "all.tsv";
  result.train_manifest = out_dir / "train.tsv";
  result.dev_manifest = out_dir / "dev.tsv";
  result.rir_dir = out_dir / "rir";
  result.rir_delta_dir = out_dir / "rir_delta";
  result.n_train = train.entries.size();
  result.n_dev = dev.entries.size();
  write_manifest(all, result.all_manifest);
  write_manifest(train, result.train_manifest);
  write_manifest(dev, result.dev_manifest);

  const double taus[3] = {60.0, 100.0, 150.0};
  for (int r = 0; r < 3; ++r) {
    Rng rng = make_rng(opt.seed, kRirTag, static_cast<uint64_t>(r));
    write_wav(make_rir(opt.sample_rate, taus[r], rng),
              result.rir_dir / ("rir_" + std::to_string(r) + ".wav"));
  }
  Waveform delta;
  delta.sample_rate = opt.sample_rate;
  delta.samples = {1.0};
  write_wav(delta, result.rir_delta_dir / "delta.wav");
  return result;
}

}  // namespace spoofkit
