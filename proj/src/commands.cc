// src/commands.cc

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

#include "spoofkit/commands.h"

#include <fstream>
#include <sstream>

#include "spoofkit/checkpoint.h"
#include "spoofkit/config.h"
#include "spoofkit/scoring.h"
#include "spoofkit/trainer.h"
#include "spoofkit/wav_io.h"

namespace spoofkit {

namespace {

void require_file(const std::filesystem::path& p, const std::string& what) {
  if (!std::filesystem::exists(p))
    throw ConfigError(what + " not found: " + p.string());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << text;
  if (!out.flush()) throw IoError("write failed: " + path.string());
}

}  // namespace

std::string cmd_synth(const SynthArgs& args) {
  SynthOptions opt;
  opt.n_per_class = args.n_per_class;
  opt.seed = args.seed;
  opt.length = args.length;
  const SynthResult r = synth_dataset(args.out_dir, opt);
  std::ostringstream os;
  os << "synthesized " << 2 * args.n_per_class << " trials ("
     << args.n_per_class << " per class)\n"
     << "  all:   " << r.all_manifest.string() << "\n"
     << "  train: " << r.train_manifest.string() << " (" << r.n_train
     << " trials)\n"
     << "  dev:   " << r.dev_manifest.string() << " (" << r.n_dev
     << " trials)\n"
     << "  rir:   " << r.rir_dir.string() << " (plus "
     << r.rir_delta_dir.string() << ")\n";
  return os.str();
}

std::string cmd_train(const TrainArgs& args) {
  require_file(args.config_path, "config");
  ExperimentConfig cfg = load_experiment_config(args.config_path);
  if (args.seed_override) cfg.seed = *args.seed_override;

  // Referenced files are checked here, where they are actually opened;
  // manifest paths in the config are relative to the working directory.
  require_file(cfg.train_manifest, "train manifest");
  require_file(cfg.dev_manifest, "dev manifest");

  const DatasetManifest train_manifest = read_manifest(cfg.train_manifest);
  const DatasetManifest dev_manifest = read_manifest(cfg.dev_manifest);

  AudioSourceOptions train_src_opt;
  train_src_opt.fit_samples = cfg.fit_length;
  train_src_opt.n_bins = cfg.model.widths.at(0);
  train_src_opt.seed = cfg.seed;
  train_src_opt.policy = cfg.policy;
  train_src_opt.mixup = cfg.mixup;
  train_src_opt.mixup_sigma = cfg.mixup_sigma;

  AudioSourceOptions dev_src_opt;  // dev is always served clean
  dev_src_opt.fit_samples = cfg.fit_length;
  dev_src_opt.n_bins = cfg.model.widths.at(0);
  dev_src_opt.seed = cfg.seed;

  AudioFeatureSource train_src(train_manifest, train_src_opt);
  AudioFeatureSource dev_src(dev_manifest, dev_src_opt);

  TrainOptions opt;
  opt.model = cfg.model;
  opt.seed = cfg.seed;
  opt.batch_size = cfg.batch_size;
  opt.max_epochs = cfg.max_epochs;
  opt.patience = cfg.patience;
  opt.eta0 = cfg.eta0;
  opt.eta_min = cfg.eta_min;
  opt.use_gam = cfg.use_gam;
  opt.gam = cfg.gam;
  opt.log_flatness = cfg.log_flatness;
  opt.flatness_rho = cfg.flatness_rho;
  opt.flatness_probes = cfg.flatness_probes;

  const TrainResult result = train(train_src, dev_src, opt);

  std::filesystem::create_directories(args.out_dir);
  const std::filesystem::path ckpt_path = args.out_dir / "model.ckpt";
  const std::filesystem::path log_path = args.out_dir / "train_log.tsv";
  const std::filesystem::path cfg_path = args.out_dir / "config.toml";
  save_checkpoint({result.model, result.theta}, ckpt_path);
  write_train_log(result, opt, log_path);
  ExperimentConfig resolved = cfg;  // snapshot of the run as executed
  resolved.gam = result.resolved_gam;
  save_experiment_config(resolved, cfg_path);

  std::ostringstream os;
  os << "trained " << (cfg.use_gam ? "adam+gam" : "adam") << " for "
     << result.log.size() << " epoch(s)"
     << (result.stopped_early ? " (early stop)" : "") << "\n"
     << "  best epoch:    " << result.best_epoch << "\n"
     << "  best dev loss: " << format_double(result.best_dev_loss) << "\n";
  if (!result.log.empty())
    os << "  final dev EER: " << format_double(result.log.back().dev_eer)
       << "\n";
  os << "  checkpoint: " << ckpt_path.string() << "\n"
     << "  log:        " << log_path.string() << "\n"
     << "  config:     " << cfg_path.string() << "\n";
  return os.str();
}

std::string cmd_score(const ScoreArgs& args) {
  require_file(args.checkpoint, "checkpoint");
  require_file(args.manifest, "manifest");
  const Checkpoint ckpt = load_checkpoint(args.checkpoint);
  const DatasetManifest manifest = read_manifest(args.manifest);
  const size_t n_bins = ckpt.spec.widths.at(0);

  ScoreRows rows;
  rows.reserve(manifest.entries.size());
  std::vector<std::string> failures;
  for (const ManifestEntry& e : manifest.entries) {
    try {
      const Waveform w =
          fit_length(read_wav(manifest.resolve_path(e)), args.fit_length);
      const std::vector<double> x = featurize(w, n_bins);
      rows.emplace_back(e.trial_id, mlp_score(ckpt.spec, ckpt.theta, x));
    } catch (const Error& err) {
      failures.push_back(e.trial_id + ": " + err.what());
    }
  }
  if (!failures.empty()) {
    std::ostringstream os;
    os << failures.size() << " trial(s) failed to score:";
    for (const std::string& f : failures) os << "\n  " << f;
    throw IoError(os.str());
  }

  write_score_file(rows, args.out_path);
  std::ostringstream os;
  os << "scored " << rows.size() << " trial(s) -> " << args.out_path.string()
     << "\n";
  return os.str();
}

std::string cmd_eval(const EvalArgs& args) {
  require_file(args.scores, "score file");
  require_file(args.manifest, "manifest");
  const ScoreRows rows = read_score_file(args.scores);
  const DatasetManifest manifest = read_manifest(args.manifest);
  const ScoreSet set = join_scores(rows, manifest);
  const std::string report = format_report(compute_report(set));
  if (!args.out_path.empty()) write_text(args.out_path, report);
  return report;
}

std::string cmd_fuse(const FuseArgs& args) {
  if (args.inputs.empty()) throw ConfigError("fuse: need at least one input");
  std::vector<ScoreRows> inputs;
  inputs.reserve(args.inputs.size());
  for (const std::filesystem::path& p : args.inputs) {
    require_file(p, "score file");
    inputs.push_back(read_score_file(p));
  }
  const ScoreRows fused = fuse_average_rows(inputs);
  write_score_file(fused, args.out_path);
  std::ostringstream os;
  os << "fused " << args.inputs.size() << " file(s), " << fused.size()
     << " trial(s) -> " << args.out_path.string() << "\n";
  return os.str();
}

}  // namespace spoofkit
