// src/net.cc

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

#include "spoofkit/net.h"

#include <algorithm>
#include <cmath>

#include "spoofkit/fft.h"

namespace spoofkit {

void validate_batch(const Batch& batch) {
  if (batch.rows == 0) throw RangeError("batch: no rows");
  if (batch.dim == 0) throw RangeError("batch: zero feature dim");
  if (batch.features.size() != batch.rows * batch.dim)
    throw RangeError("batch: feature buffer size mismatch");
  if (batch.labels.size() != batch.rows)
    throw RangeError("batch: label count mismatch");
  for (size_t r = 0; r < batch.rows; ++r) {
    const SoftLabel& y = batch.labels[r];
    if (!(y.bonafide >= 0.0 && y.spoof >= 0.0) ||
        std::abs(y.bonafide + y.spoof - 1.0) > 1e-9)
      throw RangeError("batch: label row " + std::to_string(r) +
                       " is not a probability vector");
  }
}

size_t ModelSpec::param_count() const {
  size_t n = 0;
  for (size_t l = 0; l + 1 < widths.size(); ++l)
    n += widths[l + 1] * (widths[l] + 1);
  return n;
}

void validate_model_spec(const ModelSpec& spec) {
  if (spec.widths.size() < 2)
    throw ConfigError("model: need at least input and output widths");
  if (spec.widths.back() != 2)
    throw ConfigError("model: output width must be 2 (bona fide, spoof)");
  for (size_t w : spec.widths)
    if (w == 0 || w > 1000000) throw ConfigError("model: bad layer width");
  if (!(spec.leaky_slope >= 0.0 && spec.leaky_slope < 1.0))
    throw ConfigError("model: leaky slope must lie in [0, 1)");
}

std::vector<LayoutSegment> param_layout(const ModelSpec& spec) {
  validate_model_spec(spec);
  std::vector<LayoutSegment> segs;
  size_t offset = 0;
  for (size_t l = 0; l + 1 < spec.widths.size(); ++l) {
    LayoutSegment w;
    w.layer = l;
    w.is_bias = false;
    w.offset = offset;
    w.rows = spec.widths[l + 1];
    w.cols = spec.widths[l];
    offset += w.count();
    segs.push_back(w);

    LayoutSegment b;
    b.layer = l;
    b.is_bias = true;
    b.offset = offset;
    b.rows = spec.widths[l + 1];
    b.cols = 1;
    offset += b.count();
    segs.push_back(b);
  }
  return segs;
}

std::vector<double> init_params(const ModelSpec& spec, Rng& rng) {
  validate_model_spec(spec);
  std::vector<double> theta;
  theta.reserve(spec.param_count());
  for (size_t l = 0; l + 1 < spec.widths.size(); ++l) {
    const double r = 1.0 / std::sqrt(static_cast<double>(spec.widths[l]));
    std::uniform_real_distribution<double> dist(-r, r);
    const size_t n = spec.widths[l + 1] * (spec.widths[l] + 1);
    for (size_t i = 0; i < n; ++i) theta.push_back(dist(rng));
  }
  return theta;
}

namespace {

void forward_plain(const ModelSpec& spec, std::span<const double> theta,
                   std::span<const double> x, std::array<double, 2>* logits) {
  std::vector<double> cur(x.begin(), x.end());
  std::vector<double> next;
  size_t off = 0;
  const size_t n_layers = spec.widths.size() - 1;
  for (size_t l = 0; l < n_layers; ++l) {
    const size_t in = spec.widths[l];
    const size_t out = spec.widths[l + 1];
    next.assign(out, 0.0);
    const double* w = theta.data() + off;
    const double* b = theta.data() + off + out * in;
    for (size_t u = 0; u < out; ++u) {
      double acc = b[u];
      const double* wu = w + u * in;
      for (size_t j = 0; j < in; ++j) acc += wu[j] * cur[j];
      next[u] = (l + 1 < n_layers)
                    ? (acc > 0.0 ? acc : spec.leaky_slope * acc)
                    : acc;
    }
    cur.swap(next);
    off += out * (in + 1);
  }
  (*logits)[0] = cur[0];
  (*logits)[1] = cur[1];
}

double softlabel_ce(const std::array<double, 2>& logits, const SoftLabel& y) {
  const double m = std::max(logits[0], logits[1]);
  const double lse =
      m + std::log(std::exp(logits[0] - m) + std::exp(logits[1] - m));
  return y.bonafide * (lse - logits[0]) + y.spoof * (lse - logits[1]);
}

}  // namespace

std::array<double, 2> mlp_logits(const ModelSpec& spec,
                                 std::span<const double> theta,
                                 std::span<const double> x) {
  if (theta.size() != spec.param_count())
    throw RangeError("mlp_logits: parameter count mismatch");
  if (x.size() != spec.d_in())
    throw RangeError("mlp_logits: input dimension mismatch");
  std::array<double, 2> logits;
  forward_plain(spec, theta, x, &logits);
  return logits;
}

double mlp_loss_plain(const ModelSpec& spec, std::span<const double> theta,
                      const Batch& batch) {
  validate_batch(batch);
  if (batch.dim != spec.d_in())
    throw RangeError("mlp_loss_plain: batch dim mismatch");
  double total = 0.0;
  for (size_t r = 0; r < batch.rows; ++r)
    total += softlabel_ce(mlp_logits(spec, theta, batch.row(r)),
                          batch.labels[r]);
  return total / static_cast<double>(batch.rows);
}

double mlp_score(const ModelSpec& spec, std::span<const double> theta,
                 std::span<const double> x) {
  const std::array<double, 2> l = mlp_logits(spec, theta, x);
  return l[0] - l[1];
}

MlpObjective::MlpObjective(ModelSpec spec) : spec_(std::move(spec)) {
  validate_model_spec(spec_);
  n_params_ = spec_.param_count();
}

template <typename T>
typename Tape<T>::Var MlpObjective::build(
    Tape<T>& tape, std::span<const typename Tape<T>::Var> params,
    const Batch& batch) const {
  using Var = typename Tape<T>::Var;
  validate_batch(batch);
  if (batch.dim != spec_.d_in())
    throw RangeError("mlp loss: batch dim != model d_in");
  if (params.size() != n_params_)
    throw RangeError("mlp loss: parameter count mismatch");

  const size_t n_layers = spec_.widths.size() - 1;
  Var total = tape.leaf(T{});
  std::vector<Var> cur, next;

  for (size_t r = 0; r < batch.rows; ++r) {
    const std::span<const double> x = batch.row(r);
    size_t off = 0;
    cur.clear();
    for (size_t l = 0; l < n_layers; ++l) {
      const size_t in = spec_.widths[l];
      const size_t out = spec_.widths[l + 1];
      const size_t w_off = off;
      const size_t b_off = off + out * in;
      next.clear();
      for (size_t u = 0; u < out; ++u) {
        Var acc = params[b_off + u];
        if (l == 0) {
          // First layer: inputs are constants, one node per term.
          for (size_t j = 0; j < in; ++j)
            acc = tape.fma_const(acc, params[w_off + u * in + j], x[j]);
        } else {
          for (size_t j = 0; j < in; ++j)
            acc = tape.add(acc,
                           tape.mul(params[w_off + u * in + j], cur[j]));
        }
        next.push_back(l + 1 < n_layers
                           ? tape.leaky_relu(acc, spec_.leaky_slope)
                           : acc);
      }
      cur.swap(next);
      off += out * (in + 1);
    }

    // Stable soft-label cross-entropy.  The shift m enters as a constant:
    // log-sum-exp is invariant in it, so gradients and Hessians are exact.
    const Var l0 = cur[0];
    const Var l1 = cur[1];
    const double m =
        std::max(primal(tape.value(l0)), primal(tape.value(l1)));
    const Var z = tape.add(tape.exp_(tape.add_const(l0, -m)),
                           tape.exp_(tape.add_const(l1, -m)));
    const Var lse = tape.add_const(tape.log_(z), m);
    Var row_loss = tape.leaf(T{});
    row_loss = tape.fma_const(row_loss, tape.sub(lse, l0),
                              batch.labels[r].bonafide);
    row_loss = tape.fma_const(row_loss, tape.sub(lse, l1),
                              batch.labels[r].spoof);
    total = tape.add(total, row_loss);
  }
  return tape.mul_const(total, 1.0 / static_cast<double>(batch.rows));
}

template Tape<double>::Var MlpObjective::build<double>(
    Tape<double>&, std::span<const Tape<double>::Var>, const Batch&) const;
template Tape<Dual>::Var MlpObjective::build<Dual>(
    Tape<Dual>&, std::span<const Tape<Dual>::Var>, const Batch&) const;

QuadraticObjective::QuadraticObjective(size_t dim, std::vector<double> a)
    : dim_(dim), a_(std::move(a)) {
  if (dim_ == 0 || a_.size() != dim_ * dim_)
    throw RangeError("quadratic objective: matrix must be dim x dim");
}

std::vector<double> featurize(const Waveform& w, size_t n_bins) {
  const size_t len = w.samples.size();
  if (n_bins == 0) throw RangeError("featurize: n_bins must be >= 1");
  if (len < 256)
    throw RangeError("featurize: signal too short (need >= 256 samples)");
  const size_t n_fft = next_pow2(len);
  const size_t n_spec = n_fft / 2 + 1;
  if (n_bins > n_spec)
    throw RangeError("featurize: more bands than spectrum bins");

  const Spectrum s = fft(w.samples, n_fft);
  std::vector<double> mag(n_spec);
  double peak = 0.0;
  for (size_t i = 0; i < n_spec; ++i) {
    mag[i] = std::abs(s.bins[i]);
    peak = std::max(peak, mag[i]);
  }
  if (peak == 0.0) return std::vector<double>(n_bins, 0.0);

  // Relative floor: scaling the waveform shifts every log magnitude by the
  // same amount, so mean normalization removes amplitude exactly.
  const double floor = peak * 1e-12;
  std::vector<double> bands(n_bins, 0.0);
  for (size_t b = 0; b < n_bins; ++b) {
    const size_t lo = b * n_spec / n_bins;
    const size_t hi = (b + 1) * n_spec / n_bins;
    double acc = 0.0;
    for (size_t i = lo; i < hi; ++i) acc += std::log(std::max(mag[i], floor));
    bands[b] = acc / static_cast<double>(hi - lo);
  }

  double mean = 0.0;
  for (double v : bands) mean += v;
  mean /= static_cast<double>(n_bins);
  double var = 0.0;
  for (double v : bands) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n_bins);
  const double sd = std::sqrt(var);
  if (sd < 1e-12) return std::vector<double>(n_bins, 0.0);
  for (double& v : bands) v = (v - mean) / sd;
  return bands;
}

}  // namespace spoofkit
