// src/augment.cc

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

#include "spoofkit/augment.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "spoofkit/fft.h"
#include "spoofkit/resample.h"

namespace spoofkit {

namespace {

void require_nonempty(const Waveform& w, const char* who) {
  if (w.samples.empty()) throw RangeError(std::string(who) + ": empty signal");
}

double pow_int(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

double mean_power(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return x.empty() ? 0.0 : acc / static_cast<double>(x.size());
}

}  // namespace

Waveform rir_mix_at(const Waveform& w, const Waveform& ir, double wet) {
  require_nonempty(w, "rir_mix");
  require_nonempty(ir, "rir_mix (impulse response)");
  if (!(wet >= 0.0 && wet <= 1.0))
    throw RangeError("rir_mix: wet must lie in [0, 1]");

  double norm = 0.0;
  for (double v : ir.samples) norm += v * v;
  norm = std::sqrt(norm);
  if (norm == 0.0) throw RangeError("rir_mix: all-zero impulse response");
  std::vector<double> h(ir.samples.size());
  for (size_t i = 0; i < h.size(); ++i) h[i] = ir.samples[i] / norm;

  const std::vector<double> conv = convolve(w.samples, h);
  Waveform out = w;
  // y = x + wet * (conv - x): when conv == x (unit-impulse response) the
  // correction term is exactly zero regardless of wet.
  double peak = 0.0;
  for (size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i] = w.samples[i] + wet * (conv[i] - w.samples[i]);
    peak = std::max(peak, std::abs(out.samples[i]));
  }
  if (peak > 1.0)
    for (double& v : out.samples) v /= peak;
  return out;
}

Waveform time_mask_at(const Waveform& w, size_t t0, size_t t) {
  require_nonempty(w, "time_mask");
  Waveform out = w;
  const size_t end = std::min(out.samples.size(), t0 + t);
  for (size_t i = std::min(t0, out.samples.size()); i < end; ++i)
    out.samples[i] = 0.0;
  return out;
}

namespace {
constexpr double kALawA = 87.6;
constexpr double kMuLawMu = 255.0;
}  // namespace

double compand_compress(double x, CompandLaw law) {
  const double ax = std::abs(x);
  double y;
  if (law == CompandLaw::kALaw) {
    const double denom = 1.0 + std::log(kALawA);
    y = ax < 1.0 / kALawA ? kALawA * ax / denom
                          : (1.0 + std::log(kALawA * ax)) / denom;
  } else {
    y = std::log(1.0 + kMuLawMu * ax) / std::log(1.0 + kMuLawMu);
  }
  return std::copysign(y, x);
}

double compand_expand(double y, CompandLaw law) {
  const double ay = std::abs(y);
  double x;
  if (law == CompandLaw::kALaw) {
    const double denom = 1.0 + std::log(kALawA);
    x = ay < 1.0 / denom ? ay * denom / kALawA
                         : std::exp(ay * denom - 1.0) / kALawA;
  } else {
    x = (std::pow(1.0 + kMuLawMu, ay) - 1.0) / kMuLawMu;
  }
  return std::copysign(x, y);
}

Waveform compand(const Waveform& w, CompandLaw law) {
  require_nonempty(w, "compand");
  Waveform out = w;
  for (double& v : out.samples) {
    const double clamped = std::clamp(v, -1.0, 1.0);
    const double y = compand_compress(clamped, law);
    const long long code =
        std::clamp<long long>(std::llround(y * 128.0), -128, 127);
    v = compand_expand(static_cast<double>(code) / 128.0, law);
  }
  return out;
}

Waveform rawboost_lnl_at(const Waveform& w,
                         const std::vector<BiquadCoeffs>& notches,
                         double nl_amount, int nl_order) {
  require_nonempty(w, "rawboost_lnl");
  if (!(nl_amount >= 0.0 && nl_amount <= 1.0))
    throw RangeError("rawboost_lnl: nonlinear amount must lie in [0, 1]");
  if (nl_order < 1 || nl_order % 2 == 0)
    throw RangeError("rawboost_lnl: nonlinear order must be odd and >= 1");

  Waveform out = w;
  for (const BiquadCoeffs& c : notches)
    out.samples = biquad_apply(c, out.samples);
  if (nl_amount != 0.0)
    // (1-a) x + a x^n, written so a == 0 keeps the filtered signal bitwise.
    for (double& v : out.samples)
      v += nl_amount * (pow_int(v, nl_order) - v);
  return out;
}

Waveform add_noise_at_snr(const Waveform& w, const Waveform& noise,
                          double snr_db) {
  require_nonempty(w, "add_noise");
  if (std::isinf(snr_db) && snr_db > 0.0) return w;
  if (std::isnan(snr_db)) throw RangeError("add_noise: SNR is NaN");

  const Waveform n = fit_length(noise, w.samples.size());
  const double ps = mean_power(w.samples);
  const double pn = mean_power(n.samples);
  if (ps == 0.0 || pn == 0.0) return w;

  const double scale = std::sqrt(ps / (pn * std::pow(10.0, snr_db / 10.0)));
  Waveform out = w;
  for (size_t i = 0; i < out.samples.size(); ++i)
    out.samples[i] += scale * n.samples[i];
  return out;
}

Waveform rawboost_isd_at(const Waveform& w, double p, double gain, Rng& rng) {
  require_nonempty(w, "rawboost_isd");
  if (!(p >= 0.0 && p <= 1.0))
    throw RangeError("rawboost_isd: probability must lie in [0, 1]");
  if (!(gain >= 0.0)) throw RangeError("rawboost_isd: gain must be >= 0");
  if (p == 0.0) return w;

  std::bernoulli_distribution select(p);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  Waveform out = w;
  for (double& v : out.samples)
    if (select(rng)) v += gain * std::abs(v) * amp(rng);
  return out;
}

Waveform amplitude_mix_at(const Waveform& w1, const Waveform& w2, double gamma,
                          const StftConfig& cfg) {
  require_nonempty(w1, "amplitude_mix");
  require_nonempty(w2, "amplitude_mix");
  if (w1.samples.size() != w2.samples.size() ||
      w1.sample_rate != w2.sample_rate)
    throw RangeError("amplitude_mix: inputs must share length and rate");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw RangeError("amplitude_mix: gamma must lie in [0, 1]");

  const size_t len = w1.samples.size();
  const size_t n_fft = cfg.n_fft;
  // Pad so every original sample is interior for weighted overlap-add.
  const size_t pad_l = n_fft;
  const size_t pad_r = 2 * n_fft;
  std::vector<double> x1(pad_l + len + pad_r, 0.0);
  std::vector<double> x2(pad_l + len + pad_r, 0.0);
  std::copy(w1.samples.begin(), w1.samples.end(), x1.begin() + pad_l);
  std::copy(w2.samples.begin(), w2.samples.end(), x2.begin() + pad_l);

  StftGrid g1 = stft(x1, cfg);
  const StftGrid g2 = stft(x2, cfg);
  for (size_t f = 0; f < g1.frames.size(); ++f) {
    for (size_t k = 0; k < g1.frames[f].size(); ++k) {
      const std::complex<double> c1 = g1.frames[f][k];
      const std::complex<double> c2 = g2.frames[f][k];
      const double m1 = std::abs(c1);
      const double target = m1 + gamma * (std::abs(c2) - m1);
      // Keep the first signal's phase; zero-magnitude bins stay zero.
      g1.frames[f][k] = m1 > 0.0 ? c1 * (target / m1)
                                 : std::complex<double>(target, 0.0);
    }
  }
  const std::vector<double> y = istft(g1);
  Waveform out = w1;
  for (size_t i = 0; i < len; ++i) out.samples[i] = y[pad_l + i];
  return out;
}

Waveform colored_noise(size_t len, int sample_rate, double exponent,
                       Rng& rng) {
  if (len == 0) throw RangeError("colored_noise: zero length");
  if (!(exponent >= 0.0 && exponent <= 4.0))
    throw RangeError("colored_noise: exponent must lie in [0, 4]");

  const size_t n_fft = next_pow2(std::max<size_t>(len, 2));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> white(n_fft);
  for (double& v : white) v = gauss(rng);

  Spectrum s = fft(white, n_fft);
  s.bins[0] = 0.0;  // no DC component
  for (size_t k = 1; k < n_fft; ++k) {
    const size_t fold = std::min(k, n_fft - k);  // conjugate-symmetric pair
    s.bins[k] *= std::pow(static_cast<double>(fold), -exponent / 2.0);
  }
  std::vector<double> y = ifft(s);
  y.resize(len);

  const double p = mean_power(y);
  if (p > 0.0) {
    const double inv = 1.0 / std::sqrt(p);
    for (double& v : y) v *= inv;
  }
  Waveform out;
  out.samples = std::move(y);
  out.sample_rate = sample_rate;
  return out;
}

Waveform shift_circular(const Waveform& w, long long amount) {
  require_nonempty(w, "shift");
  if (amount == 0) return w;
  const long long n = static_cast<long long>(w.samples.size());
  const long long k = ((amount % n) + n) % n;
  Waveform out = w;
  for (long long i = 0; i < n; ++i)
    out.samples[static_cast<size_t>((i + k) % n)] =
        w.samples[static_cast<size_t>(i)];
  return out;
}

Waveform polarity_invert(const Waveform& w) {
  require_nonempty(w, "polarity_invert");
  Waveform out = w;
  for (double& v : out.samples) v = -v;
  return out;
}

Waveform tanh_distort(const Waveform& w, double drive) {
  require_nonempty(w, "tanh_distort");
  if (!(drive >= 0.0)) throw RangeError("tanh_distort: drive must be >= 0");
  if (drive == 0.0) return w;  // the drive -> 0 limit of tanh(dx)/tanh(d) is x
  Waveform out = w;
  const double denom = std::tanh(drive);
  for (double& v : out.samples) v = std::tanh(drive * v) / denom;
  return out;
}

Waveform pitch_shift(const Waveform& w, double semitones) {
  require_nonempty(w, "pitch_shift");
  if (!(semitones >= -24.0 && semitones <= 24.0))
    throw RangeError("pitch_shift: semitones out of range [-24, 24]");
  if (semitones == 0.0) return w;

  const double factor = std::pow(2.0, semitones / 12.0);
  const int inner_sr =
      std::max(1, static_cast<int>(std::llround(w.sample_rate / factor)));
  Waveform r = resample_linear(w, inner_sr);
  // Reinterpreting the resampled signal at the original rate scales every
  // frequency by `factor`; re-fitting restores the original length.
  r.sample_rate = w.sample_rate;
  return fit_length(r, w.samples.size());
}

Waveform time_stretch(const Waveform& w, double rate) {
  require_nonempty(w, "time_stretch");
  if (!(rate > 0.0)) throw RangeError("time_stretch: rate must be > 0");
  if (rate == 1.0) return w;

  const size_t len = w.samples.size();
  size_t n_w = 256;
  while (n_w > len) n_w /= 2;
  if (n_w < 16) return w;  // too short to stretch meaningfully

  const size_t hs = n_w / 4;  // synthesis hop
  const double ha = static_cast<double>(hs) * rate;  // analysis hop
  const std::vector<double> win = hann_window(n_w);

  const size_t out_len =
      std::max<size_t>(n_w, static_cast<size_t>(
                                std::llround(static_cast<double>(len) / rate)));
  std::vector<double> acc(out_len + n_w, 0.0);
  std::vector<double> norm(out_len + n_w, 0.0);
  for (size_t f = 0;; ++f) {
    const size_t t_out = f * hs;
    const size_t t_in = static_cast<size_t>(std::llround(ha * f));
    if (t_out + n_w > acc.size() || t_in + n_w > len) break;
    for (size_t i = 0; i < n_w; ++i) {
      acc[t_out + i] += win[i] * win[i] * w.samples[t_in + i];
      norm[t_out + i] += win[i] * win[i];
    }
  }
  std::vector<double> y(out_len, 0.0);
  for (size_t i = 0; i < out_len; ++i)
    if (norm[i] > 1e-9) y[i] = acc[i] / norm[i];

  Waveform stretched;
  stretched.samples = std::move(y);
  stretched.sample_rate = w.sample_rate;
  return fit_length(stretched, len);
}

Waveform aliasing_at(const Waveform& w, int low_sr) {
  require_nonempty(w, "aliasing");
  if (low_sr <= 0) throw RangeError("aliasing: target rate must be > 0");
  if (low_sr >= w.sample_rate) return w;
  const Waveform down = resample_linear(w, low_sr);
  Waveform up = resample_linear(down, w.sample_rate);
  return fit_length(up, w.samples.size());
}

Waveform air_absorption_at(const Waveform& w, double f_c) {
  require_nonempty(w, "air_absorption");
  const double clamped =
      std::min(f_c, 0.45 * static_cast<double>(w.sample_rate));
  if (!(clamped > 0.0)) throw RangeError("air_absorption: bad cutoff");
  const BiquadCoeffs c = biquad_design(BiquadKind::kLowPass, clamped,
                                       1.0 / std::sqrt(2.0), 0.0,
                                       w.sample_rate);
  Waveform out = w;
  out.samples = biquad_apply(c, out.samples);
  return out;
}

std::pair<Waveform, SoftLabel> mixup_at(const Waveform& w1, const SoftLabel& y1,
                                        const Waveform& w2, const SoftLabel& y2,
                                        double lambda) {
  require_nonempty(w1, "mixup");
  require_nonempty(w2, "mixup");
  if (w1.samples.size() != w2.samples.size() ||
      w1.sample_rate != w2.sample_rate)
    throw RangeError("mixup: inputs must share length and rate");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw RangeError("mixup: lambda must lie in [0, 1]");

  Waveform out = w1;
  for (size_t i = 0; i < out.samples.size(); ++i)
    out.samples[i] = lambda * w1.samples[i] + (1.0 - lambda) * w2.samples[i];
  SoftLabel y;
  y.bonafide = lambda * y1.bonafide + (1.0 - lambda) * y2.bonafide;
  y.spoof = lambda * y1.spoof + (1.0 - lambda) * y2.spoof;
  return {std::move(out), y};
}

double sample_beta(double a, double b, Rng& rng) {
  if (!(a > 0.0) || !(b > 0.0))
    throw RangeError("sample_beta: shape parameters must be > 0");
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  const double s = x + y;
  return s > 0.0 ? x / s : 0.5;
}

std::pair<Waveform, SoftLabel> mixup(const Waveform& w1, const SoftLabel& y1,
                                     const Waveform& w2, const SoftLabel& y2,
                                     double sigma, Rng& rng) {
  const double lambda = sample_beta(sigma, sigma, rng);
  return mixup_at(w1, y1, w2, y2, lambda);
}

}  // namespace spoofkit
