// include/spoofkit/trainer.h

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

#ifndef SPOOFKIT_TRAINER_H_
#define SPOOFKIT_TRAINER_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "spoofkit/augment.h"
#include "spoofkit/net.h"
#include "spoofkit/optim.h"

namespace spoofkit {

// Supplies feature batches to the training loop.  Implementations must be
// deterministic in (indices, epoch, batch_ordinal) for a fixed construction
// seed; the trainer relies on that for reproducible runs.
class FeatureSource {
 public:
  virtual ~FeatureSource() = default;

  virtual size_t size() const = 0;
  virtual size_t dim() const = 0;
  virtual Label label(size_t i) const = 0;
  virtual const std::string& trial_id(size_t i) const = 0;

  virtual Batch make_batch(std::span<const size_t> indices, uint64_t epoch,
                           uint64_t batch_ordinal) = 0;
};

// Fixed feature matrix; epoch and ordinal are ignored.  Used by tests and
// synthetic-landscape experiments.
class InMemoryFeatureSource final : public FeatureSource {
 public:
  InMemoryFeatureSource(size_t dim, std::vector<std::vector<double>> rows,
                        std::vector<Label> labels);

  size_t size() const override { return rows_.size(); }
  size_t dim() const override { return dim_; }
  Label label(size_t i) const override { return labels_.at(i); }
  const std::string& trial_id(size_t i) const override { return ids_.at(i); }

  Batch make_batch(std::span<const size_t> indices, uint64_t epoch,
                   uint64_t batch_ordinal) override;

 private:
  size_t dim_;
  std::vector<std::vector<double>> rows_;
  std::vector<Label> labels_;
  std::vector<std::string> ids_;
};

struct AudioSourceOptions {
  size_t fit_samples = 64600;  // every utterance truncated/tiled to this
  size_t n_bins = 40;          // feature dimension
  uint64_t seed = 1;           // master seed for per-utterance streams
  std::optional<AugmentPolicy> policy;  // absent = clean features
  bool mixup = false;          // batch-level waveform/label interpolation
  double mixup_sigma = 1.0;    // Beta(sigma, sigma) mixing weight
};

// Loads every manifest utterance up front (fit to length), then serves
// batches: per-utterance augmentation streams are derived as
// (seed, epoch + 1, utterance index), so a trial's augmentation depends
// only on the seed, the epoch, and its own index — never on batch shape.
// Spectrum-mix partners come from the same (speaker, label) group; when a
// trial has no partner the transform degrades to identity and the
// degradation counter increments.  Without a policy, features are computed
// once and cached.
class AudioFeatureSource final : public FeatureSource {
 public:
  AudioFeatureSource(const DatasetManifest& manifest,
                     const AudioSourceOptions& options);

  size_t size() const override { return waves_.size(); }
  size_t dim() const override { return options_.n_bins; }
  Label label(size_t i) const override { return labels_.at(i); }
  const std::string& trial_id(size_t i) const override { return ids_.at(i); }

  Batch make_batch(std::span<const size_t> indices, uint64_t epoch,
                   uint64_t batch_ordinal) override;

  size_t mix_degraded() const { return mix_degraded_; }

 private:
  std::vector<double> clean_features(size_t i);

  AudioSourceOptions options_;
  std::vector<Waveform> waves_;
  std::vector<Label> labels_;
  std::vector<std::string> ids_;
  std::vector<std::vector<size_t>> partner_pool_;  // same speaker and label
  std::unique_ptr<RirBank> rir_bank_;
  std::vector<std::vector<double>> feature_cache_;  // policy-free path only
  size_t mix_degraded_ = 0;
};

// ---------------------------------------------------------------------------
// Training loop
// ---------------------------------------------------------------------------

struct TrainOptions {
  ModelSpec model;
  uint64_t seed = 1;
  size_t batch_size = 32;
  size_t max_epochs = 100;
  size_t patience = 10;
  double eta0 = 5e-6;
  double eta_min = 1e-8;
  bool use_gam = false;
  GamConfig gam;  // rho <= 0 requests the default 0.05 * (1 + ||theta0||)
  bool log_flatness = false;
  double flatness_rho = 0.2;
  size_t flatness_probes = 50;
};

struct EpochRecord {
  size_t epoch = 0;
  double train_loss = 0.0;
  double dev_loss = 0.0;
  double dev_eer = 0.0;
  double lr = 0.0;
  std::optional<double> flatness;
};

struct TrainResult {
  ModelSpec model;
  std::vector<double> theta;  // parameters with the best dev loss
  std::vector<EpochRecord> log;
  size_t best_epoch = 0;
  double best_dev_loss = 0.0;
  bool stopped_early = false;
  GamConfig resolved_gam;  // rho filled in when the default was requested
};

// Deterministic in (sources' seed, options): initializes the model, runs
// batched epochs with a cosine-annealed learning rate, tracks dev loss and
// dev EER after every epoch, and stops early when the dev loss has not
// improved for `patience` epochs.  max_epochs == 0 returns the initial
// parameters with an empty log.
TrainResult train(FeatureSource& train_src, FeatureSource& dev_src,
                  const TrainOptions& options);

// TSV log: `#`-prefixed header lines describing the run (optimizer choice,
// schedule, radii), then one `epoch  train_loss  dev_loss  dev_eer  lr
// [flatness]` line per epoch.
void write_train_log(const TrainResult& result, const TrainOptions& options,
                     const std::filesystem::path& path);

}  // namespace spoofkit

#endif  // SPOOFKIT_TRAINER_H_
