// include/spoofkit/commands.h

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

#ifndef SPOOFKIT_COMMANDS_H_
#define SPOOFKIT_COMMANDS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spoofkit/synth.h"

namespace spoofkit {

// Each command returns a human-readable summary for stdout and throws
// spoofkit::Error on failure, leaving exit-code mapping to the binary.

struct SynthArgs {
  std::filesystem::path out_dir;
  size_t n_per_class = 200;
  uint64_t seed = 1;
  size_t length = 16000;
};

std::string cmd_synth(const SynthArgs& args);

struct TrainArgs {
  std::filesystem::path config_path;
  std::filesystem::path out_dir;
  std::optional<uint64_t> seed_override;
};

// Trains per the config and writes out_dir/model.ckpt, out_dir/train_log.tsv
// and out_dir/config.toml (the config as actually run: overridden seed,
// resolved radii).
std::string cmd_train(const TrainArgs& args);

struct ScoreArgs {
  std::filesystem::path checkpoint;
  std::filesystem::path manifest;
  size_t fit_length = 64600;
  std::filesystem::path out_path;
};

// Scores every manifest trial (higher = more bona fide) into a two-column
// TSV sorted by trial id.  Unreadable trials are collected and reported
// together in one error.
std::string cmd_score(const ScoreArgs& args);

struct EvalArgs {
  std::filesystem::path scores;
  std::filesystem::path manifest;
  std::filesystem::path out_path;  // optional; empty = print only
};

std::string cmd_eval(const EvalArgs& args);

struct FuseArgs {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path out_path;
};

std::string cmd_fuse(const FuseArgs& args);

}  // namespace spoofkit

#endif  // SPOOFKIT_COMMANDS_H_
