// include/spoofkit/net.h

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

#ifndef SPOOFKIT_NET_H_
#define SPOOFKIT_NET_H_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "spoofkit/objective.h"

namespace spoofkit {

// Fully connected feed-forward classifier: widths.front() inputs, LeakyReLU
// hidden layers, widths.back() == 2 output logits (bona fide, spoof).
struct ModelSpec {
  std::vector<size_t> widths = {40, 64, 32, 2};
  double leaky_slope = 0.01;

  size_t d_in() const { return widths.front(); }
  size_t param_count() const;

  bool operator==(const ModelSpec&) const = default;
};

void validate_model_spec(const ModelSpec& spec);

// Where each weight matrix / bias vector lives inside the flat parameter
// vector.  Layer l maps widths[l] -> widths[l+1]; its weight block is
// row-major (rows = fan-out, cols = fan-in) and is followed by its bias.
struct LayoutSegment {
  size_t layer = 0;
  bool is_bias = false;
  size_t offset = 0;
  size_t rows = 0;  // bias: rows = length, cols = 1
  size_t cols = 1;

  size_t count() const { return rows * cols; }
};

std::vector<LayoutSegment> param_layout(const ModelSpec& spec);

// Uniform init in [-1/sqrt(fan_in), 1/sqrt(fan_in)] per layer.
std::vector<double> init_params(const ModelSpec& spec, Rng& rng);

// Plain (tape-free) forward pass; used for scoring and dev evaluation.
std::array<double, 2> mlp_logits(const ModelSpec& spec,
                                 std::span<const double> theta,
                                 std::span<const double> x);

// Soft-label cross-entropy of the plain forward pass, averaged over rows.
double mlp_loss_plain(const ModelSpec& spec, std::span<const double> theta,
                      const Batch& batch);

// Detection score with the polarity "higher means more bona fide".
double mlp_score(const ModelSpec& spec, std::span<const double> theta,
                 std::span<const double> x);

// The differentiable objective: mean soft-label cross-entropy of the MLP
// over a batch, with a numerically stable (max-shifted) log-sum-exp.
class MlpObjective final : public GraphObjective<MlpObjective> {
 public:
  explicit MlpObjective(ModelSpec spec);

  size_t dim() const override { return n_params_; }
  const ModelSpec& spec() const { return spec_; }

  template <typename T>
  typename Tape<T>::Var build(Tape<T>& tape,
                              std::span<const typename Tape<T>::Var> params,
                              const Batch& batch) const;

 private:
  ModelSpec spec_;
  size_t n_params_;
};

// Log-magnitude band-energy front end:
//  - FFT at the next power of two >= len (signal >= 256 samples required)
//  - log magnitudes with a floor 1e-12 relative to the spectral peak, so a
//    global amplitude scale only shifts the log spectrum uniformly
//  - averaged into n_bins equal-width bands over [0, Nyquist]
//  - mean/variance normalized; a constant band vector maps to all zeros
std::vector<double> featurize(const Waveform& w, size_t n_bins);

}  // namespace spoofkit

#endif  // SPOOFKIT_NET_H_
