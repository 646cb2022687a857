// tools/main.cc

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

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spoofkit/commands.h"
#include "spoofkit/common.h"

namespace {

// Exit codes: 0 success, 1 usage error, 2 data/config/runtime error.
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

int usage_error(const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spoofkit: augmentation, flat-minima training, and scoring "
               "experiments for spoofed-speech detection"};
  app.require_subcommand(1);
  app.fallthrough();

  uint64_t seed = 1;
  bool seed_given = false;
  std::string config_path;
  std::string out_path;
  app.add_option("--seed", seed, "Random seed")->each([&](const std::string&) {
    seed_given = true;
  });
  app.add_option("--config", config_path, "Experiment config file");
  app.add_option("--out", out_path, "Output file or directory");

  CLI::App* synth = app.add_subcommand(
      "synth", "Generate a synthetic two-class dataset with manifests");
  size_t n_per_class = 200;
  size_t synth_length = 16000;
  synth->add_option("--n-per-class", n_per_class,
                    "Trials per class (bona fide and spoof)");
  synth->add_option("--length", synth_length, "Samples per utterance");

  CLI::App* train =
      app.add_subcommand("train", "Train a model from an experiment config");

  CLI::App* score = app.add_subcommand(
      "score", "Score manifest trials with a trained checkpoint");
  std::string ckpt_path;
  std::string score_manifest;
  size_t fit_length = 64600;
  score->add_option("--checkpoint", ckpt_path, "Model checkpoint");
  score->add_option("--manifest", score_manifest, "Trial manifest TSV");
  score->add_option("--fit-length", fit_length,
                    "Samples per trial at inference (may differ from "
                    "the training length)");

  CLI::App* eval_cmd = app.add_subcommand(
      "eval", "Join scores with labels and report minDCF/actDCF/Cllr/EER");
  std::string eval_scores;
  std::string eval_manifest;
  eval_cmd->add_option("--scores", eval_scores, "Score file TSV");
  eval_cmd->add_option("--manifest", eval_manifest, "Trial manifest TSV");

  CLI::App* fuse = app.add_subcommand(
      "fuse", "Average per-trial scores across score files");
  std::vector<std::string> fuse_inputs;
  fuse->add_option("inputs", fuse_inputs, "Score files to fuse");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    std::string summary;
    if (synth->parsed()) {
      if (out_path.empty()) return usage_error("synth requires --out <dir>");
      spoofkit::SynthArgs args;
      args.out_dir = out_path;
      args.n_per_class = n_per_class;
      args.seed = seed;
      args.length = synth_length;
      summary = spoofkit::cmd_synth(args);
    } else if (train->parsed()) {
      if (config_path.empty())
        return usage_error("train requires --config <file>");
      if (out_path.empty()) return usage_error("train requires --out <dir>");
      spoofkit::TrainArgs args;
      args.config_path = config_path;
      args.out_dir = out_path;
      if (seed_given) args.seed_override = seed;
      summary = spoofkit::cmd_train(args);
    } else if (score->parsed()) {
      if (ckpt_path.empty())
        return usage_error("score requires --checkpoint <file>");
      if (score_manifest.empty())
        return usage_error("score requires --manifest <file>");
      if (out_path.empty()) return usage_error("score requires --out <file>");
      spoofkit::ScoreArgs args;
      args.checkpoint = ckpt_path;
      args.manifest = score_manifest;
      args.fit_length = fit_length;
      args.out_path = out_path;
      summary = spoofkit::cmd_score(args);
    } else if (eval_cmd->parsed()) {
      if (eval_scores.empty())
        return usage_error("eval requires --scores <file>");
      if (eval_manifest.empty())
        return usage_error("eval requires --manifest <file>");
      spoofkit::EvalArgs args;
      args.scores = eval_scores;
      args.manifest = eval_manifest;
      args.out_path = out_path;  // optional
      summary = spoofkit::cmd_eval(args);
    } else if (fuse->parsed()) {
      if (fuse_inputs.empty())
        return usage_error("fuse requires at least one input score file");
      if (out_path.empty()) return usage_error("fuse requires --out <file>");
      spoofkit::FuseArgs args;
      for (const std::string& p : fuse_inputs) args.inputs.emplace_back(p);
      args.out_path = out_path;
      summary = spoofkit::cmd_fuse(args);
    }
    std::fputs(summary.c_str(), stdout);
    return 0;
  } catch (const spoofkit::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitData;
  }
}
