// src/trainer.cc

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

#include "spoofkit/trainer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>

#include "spoofkit/scoring.h"
#include "spoofkit/wav_io.h"

namespace spoofkit {

namespace {

// Stream tags for derive_seed: distinct lanes so no two concerns ever share
// an RNG stream.
constexpr uint64_t kInitTag = 0x1A17;
constexpr uint64_t kShuffleTag = 0xE;
constexpr uint64_t kMixupTag = 0xB17;
constexpr uint64_t kFlatnessTag = 0xF1A7;

void fisher_yates(std::vector<size_t>* order, Rng& rng) {
  for (size_t i = order->size(); i > 1; --i) {
    std::uniform_int_distribution<size_t> pick(0, i - 1);
    std::swap((*order)[i - 1], (*order)[pick(rng)]);
  }
}

}  // namespace

InMemoryFeatureSource::InMemoryFeatureSource(
    size_t dim, std::vector<std::vector<double>> rows,
    std::vector<Label> labels)
    : dim_(dim), rows_(std::move(rows)), labels_(std::move(labels)) {
  if (dim_ == 0) throw RangeError("feature source: zero dim");
  if (rows_.empty() || rows_.size() != labels_.size())
    throw RangeError("feature source: rows/labels mismatch");
  for (const auto& r : rows_)
    if (r.size() != dim_)
      throw RangeError("feature source: row width mismatch");
  ids_.reserve(rows_.size());
  for (size_t i = 0; i < rows_.size(); ++i)
    ids_.push_back("row_" + std::to_string(i));
}

Batch InMemoryFeatureSource::make_batch(std::span<const size_t> indices,
                                        uint64_t epoch,
                                        uint64_t batch_ordinal) {
  (void)epoch;
  (void)batch_ordinal;
  if (indices.empty()) throw RangeError("make_batch: empty index list");
  Batch b;
  b.rows = indices.size();
  b.dim = dim_;
  b.features.reserve(b.rows * dim_);
  for (size_t idx : indices) {
    const auto& row = rows_.at(idx);
    b.features.insert(b.features.end(), row.begin(), row.end());
    b.labels.push_back(soft_label(labels_.at(idx)));
  }
  return b;
}

AudioFeatureSource::AudioFeatureSource(const DatasetManifest& manifest,
                                       const AudioSourceOptions& options)
    : options_(options) {
  if (manifest.entries.empty())
    throw RangeError("audio source: empty manifest");
  if (options_.fit_samples == 0)
    throw ConfigError("audio source: fit_samples must be >= 1");
  if (options_.policy.has_value()) validate_policy(*options_.policy);

  // Group utterances by (speaker, label) for spectrum-mix partners.
  std::map<std::pair<std::string, Label>, std::vector<size_t>> groups;
  for (const ManifestEntry& e : manifest.entries) {
    const size_t i = waves_.size();
    waves_.push_back(
        fit_length(read_wav(manifest.resolve_path(e)), options_.fit_samples));
    labels_.push_back(e.label);
    ids_.push_back(e.trial_id);
    groups[{e.speaker_id, e.label}].push_back(i);
  }
  partner_pool_.resize(waves_.size());
  for (const auto& [key, members] : groups)
    for (size_t i : members)
      for (size_t j : members)
        if (j != i) partner_pool_[i].push_back(j);

  // One impulse-response bank per source; all reverb stages must agree on
  // the directory.
  if (options_.policy.has_value()) {
    std::string dir;
    for (const PolicyStage& st : options_.policy->stages)
      for (const TransformSpec& t : st.choices)
        if (t.kind == TransformKind::kRir) {
          if (t.rir_dir.empty())
            throw ConfigError("rir transform needs rir_dir");
          if (dir.empty()) dir = t.rir_dir;
          if (dir != t.rir_dir)
            throw ConfigError(
                "all rir stages must share one impulse-response directory");
        }
    if (!dir.empty()) rir_bank_ = std::make_unique<RirBank>(dir);
  }
  feature_cache_.resize(waves_.size());
}

std::vector<double> AudioFeatureSource::clean_features(size_t i) {
  if (feature_cache_[i].empty())
    feature_cache_[i] = featurize(waves_[i], options_.n_bins);
  return feature_cache_[i];
}

Batch AudioFeatureSource::make_batch(std::span<const size_t> indices,
                                     uint64_t epoch, uint64_t batch_ordinal) {
  if (indices.empty()) throw RangeError("make_batch: empty index list");
  Batch b;
  b.rows = indices.size();
  b.dim = options_.n_bins;
  b.features.reserve(b.rows * b.dim);

  if (!options_.policy.has_value() && !options_.mixup) {
    for (size_t idx : indices) {
      const std::vector<double> f = clean_features(idx);
      b.features.insert(b.features.end(), f.begin(), f.end());
      b.labels.push_back(soft_label(labels_.at(idx)));
    }
    return b;
  }

  std::vector<Waveform> waves(b.rows);
  std::vector<SoftLabel> ys(b.rows);
  for (size_t r = 0; r < b.rows; ++r) {
    const size_t idx = indices[r];
    ys[r] = soft_label(labels_.at(idx));
    if (!options_.policy.has_value()) {
      waves[r] = waves_.at(idx);
      continue;
    }
    // The augmentation stream depends only on (seed, epoch, utterance), so
    // batch boundaries never change what a trial looks like.
    Rng rng = make_rng(options_.seed, epoch + 1, idx);
    AugmentContext ctx;
    ctx.rir_bank = rir_bank_.get();
    ctx.mix_degraded = &mix_degraded_;
    ctx.partner = [this, idx](Rng& prng) -> std::optional<Waveform> {
      const std::vector<size_t>& pool = partner_pool_[idx];
      if (pool.empty()) return std::nullopt;
      std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
      return waves_[pool[pick(prng)]];
    };
    waves[r] = apply_policy(*options_.policy, waves_.at(idx), ctx, rng);
  }

  if (options_.mixup && b.rows >= 2) {
    Rng mrng = make_rng(options_.seed, kMixupTag,
                        (epoch << 32) | (batch_ordinal & 0xFFFFFFFFull));
    const std::vector<Waveform> base = waves;
    const std::vector<SoftLabel> base_y = ys;
    std::uniform_int_distribution<size_t> pick(0, b.rows - 1);
    for (size_t r = 0; r < b.rows; ++r) {
      const size_t p = pick(mrng);
      const double lambda =
          sample_beta(options_.mixup_sigma, options_.mixup_sigma, mrng);
      auto [w, y] = mixup_at(base[r], base_y[r], base[p], base_y[p], lambda);
      waves[r] = std::move(w);
      ys[r] = y;
    }
  }

  for (size_t r = 0; r < b.rows; ++r) {
    const std::vector<double> f = featurize(waves[r], options_.n_bins);
    b.features.insert(b.features.end(), f.begin(), f.end());
  }
  b.labels = std::move(ys);
  return b;
}

namespace {

double dev_eer_of(const ModelSpec& model, std::span<const double> theta,
                  const Batch& dev_batch, FeatureSource& dev_src) {
  ScoreSet set;
  for (size_t i = 0; i < dev_batch.rows; ++i)
    set.trials.push_back(TrialScore{dev_src.trial_id(i), dev_src.label(i),
                                    mlp_score(model, theta,
                                              dev_batch.row(i))});
  return eer(set).value;
}

}  // namespace

TrainResult train(FeatureSource& train_src, FeatureSource& dev_src,
                  const TrainOptions& options) {
  validate_model_spec(options.model);
  if (train_src.dim() != options.model.d_in() ||
      dev_src.dim() != options.model.d_in())
    throw ConfigError("train: feature dim does not match model input width");
  if (options.batch_size == 0) throw ConfigError("train: batch_size >= 1");
  if (!(options.eta_min <= options.eta0))
    throw ConfigError("train: eta_min must not exceed eta0");
  {
    bool has_bona = false, has_spoof = false;
    for (size_t i = 0; i < dev_src.size(); ++i)
      (dev_src.label(i) == Label::kBonafide ? has_bona : has_spoof) = true;
    if (!has_bona || !has_spoof)
      throw ConfigError("train: dev split needs both classes for EER");
  }

  TrainResult result;
  result.model = options.model;
  Rng init_rng = make_rng(options.seed, kInitTag, 0);
  std::vector<double> theta = init_params(options.model, init_rng);

  MlpObjective obj(options.model);
  AdamState adam = make_adam_state(theta.size());
  GamConfig gam = options.gam;
  if (options.use_gam && gam.rho <= 0.0) gam.rho = gam_default_rho(theta);
  gam.batch = options.batch_size;
  result.resolved_gam = gam;

  // Dev features are augmentation-free; build them once.
  std::vector<size_t> dev_indices(dev_src.size());
  for (size_t i = 0; i < dev_indices.size(); ++i) dev_indices[i] = i;
  const Batch dev_batch = dev_src.make_batch(dev_indices, 0, 0);

  Batch probe_batch;
  if (options.log_flatness) {
    const size_t probe_rows =
        std::min(options.batch_size, dev_src.size());
    probe_batch = dev_src.make_batch(
        std::span<const size_t>(dev_indices.data(), probe_rows), 0, 0);
  }

  result.theta = theta;
  result.best_epoch = 0;
  result.best_dev_loss = mlp_loss_plain(options.model, theta, dev_batch);

  std::vector<size_t> order(train_src.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<double> dev_history;

  for (size_t epoch = 0; epoch < options.max_epochs; ++epoch) {
    const double lr =
        cosine_lr(epoch, options.max_epochs, options.eta0, options.eta_min);
    Rng shuffle_rng = make_rng(options.seed, kShuffleTag, epoch);
    fisher_yates(&order, shuffle_rng);

    GamConfig step_gam = gam;
    if (options.use_gam)
      step_gam.rho = gam_rho_at(gam, epoch, options.max_epochs);

    double loss_sum = 0.0;
    uint64_t ordinal = 0;
    for (size_t start = 0; start < order.size();
         start += options.batch_size, ++ordinal) {
      const size_t rows =
          std::min(options.batch_size, order.size() - start);
      const Batch batch = train_src.make_batch(
          std::span<const size_t>(order.data() + start, rows), epoch,
          ordinal);
      double loss = 0.0;
      if (options.use_gam) {
        loss = gam_step(obj, theta, batch, step_gam, lr, adam);
      } else {
        const std::vector<double> g = obj.grad(theta, batch, &loss);
        adam_step(adam, theta, g, lr);
      }
      loss_sum += loss * static_cast<double>(rows);
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = loss_sum / static_cast<double>(order.size());
    rec.dev_loss = mlp_loss_plain(options.model, theta, dev_batch);
    rec.dev_eer = dev_eer_of(options.model, theta, dev_batch, dev_src);
    rec.lr = lr;
    if (options.log_flatness) {
      Rng frng = make_rng(options.seed, kFlatnessTag, epoch);
      rec.flatness = estimate_flatness(obj, theta, probe_batch,
                                       options.flatness_rho,
                                       options.flatness_probes, frng)
                         .r_hat;
    }
    result.log.push_back(rec);

    if (rec.dev_loss < result.best_dev_loss) {
      result.best_dev_loss = rec.dev_loss;
      result.best_epoch = epoch;
      result.theta = theta;
    }
    dev_history.push_back(rec.dev_loss);
    if (early_stop(dev_history, options.patience)) {
      result.stopped_early = true;
      break;
    }
  }
  return result;
}

void write_train_log(const TrainResult& result, const TrainOptions& options,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write training log: " + path.string());
  out << "# optimizer: " << (options.use_gam ? "adam+gam" : "adam") << "\n";
  out << "# update: combined gradient fed through adam moment estimates\n";
  out << "# seed=" << options.seed << " batch=" << options.batch_size
      << " max_epochs=" << options.max_epochs
      << " patience=" << options.patience
      << " eta0=" << format_double(options.eta0)
      << " eta_min=" << format_double(options.eta_min) << "\n";
  if (options.use_gam) {
    const GamConfig& g = result.resolved_gam;
    out << "# gam: rho=" << format_double(g.rho)
        << " alpha=" << format_double(g.alpha)
        << " xi=" << format_double(g.xi) << " rho_linear_decay="
        << (g.rho_linear_decay ? "true" : "false") << " hvp="
        << (g.hvp_mode == HvpMode::kExact ? "exact" : "fd") << "\n";
  }
  if (options.log_flatness)
    out << "# flatness: rho=" << format_double(options.flatness_rho)
        << " probes=" << options.flatness_probes << "\n";
  out << "# best_epoch=" << result.best_epoch
      << " best_dev_loss=" << format_double(result.best_dev_loss)
      << " stopped_early=" << (result.stopped_early ? "true" : "false")
      << "\n";
  out << "# columns: epoch\ttrain_loss\tdev_loss\tdev_eer\tlr"
      << (options.log_flatness ? "\tflatness" : "") << "\n";
  for (const EpochRecord& r : result.log) {
    out << r.epoch << '\t' << format_double(r.train_loss) << '\t'
        << format_double(r.dev_loss) << '\t' << format_double(r.dev_eer)
        << '\t' << format_double(r.lr);
    if (r.flatness.has_value()) out << '\t' << format_double(*r.flatness);
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace spoofkit
