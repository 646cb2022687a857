// include/spoofkit/config.h

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

#ifndef SPOOFKIT_CONFIG_H_
#define SPOOFKIT_CONFIG_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spoofkit/augment.h"
#include "spoofkit/net.h"
#include "spoofkit/optim.h"

namespace spoofkit {

// ---------------------------------------------------------------------------
// A small TOML-style document model: named tables of key = value pairs.
// Supported values: quoted strings, numbers, booleans, and single-line
// arrays of those.  `#` starts a comment; table headers are [dotted.names].
// Parse errors carry 1-based line numbers.
// ---------------------------------------------------------------------------

struct ConfigValue {
  enum class Kind { kString, kNumber, kBool, kArray };

  Kind kind = Kind::kNumber;
  std::string str;
  double num = 0.0;
  bool flag = false;
  std::vector<ConfigValue> array;

  static ConfigValue of_string(std::string s);
  static ConfigValue of_number(double v);
  static ConfigValue of_bool(bool b);
  static ConfigValue of_array(std::vector<ConfigValue> items);

  bool operator==(const ConfigValue&) const = default;
};

struct ConfigDoc {
  // Tables in first-appearance order; "" is the root table.  Keys within a
  // table are sorted (map), which is what serialization emits.
  std::vector<std::pair<std::string, std::map<std::string, ConfigValue>>>
      tables;

  const std::map<std::string, ConfigValue>* table(const std::string& name)
      const;
  const ConfigValue* find(const std::string& table,
                          const std::string& key) const;
  std::map<std::string, ConfigValue>& table_mut(const std::string& name);

  bool operator==(const ConfigDoc&) const = default;
};

ConfigDoc parse_config(const std::string& text);
std::string serialize_config(const ConfigDoc& doc);

// ---------------------------------------------------------------------------
// Experiment description.  parse -> serialize -> parse is structurally
// stable; file-existence checks are performed by the commands that actually
// open the files.
// ---------------------------------------------------------------------------

struct ExperimentConfig {
  uint64_t seed = 1;
  std::string train_manifest;
  std::string dev_manifest;
  std::string eval_manifest;  // optional; empty = none
  size_t fit_length = 64600;
  ModelSpec model;
  size_t batch_size = 32;
  bool use_gam = false;
  GamConfig gam;
  double eta0 = 5e-6;
  double eta_min = 1e-8;
  size_t max_epochs = 100;
  size_t patience = 10;
  bool mixup = false;
  double mixup_sigma = 1.0;
  bool log_flatness = false;
  double flatness_rho = 0.2;
  size_t flatness_probes = 50;
  std::optional<AugmentPolicy> policy;
};

bool operator==(const GamConfig& a, const GamConfig& b);
bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

ExperimentConfig config_from_doc(const ConfigDoc& doc);
ConfigDoc config_to_doc(const ExperimentConfig& cfg);

ExperimentConfig load_experiment_config(const std::filesystem::path& path);
void save_experiment_config(const ExperimentConfig& cfg,
                            const std::filesystem::path& path);

}  // namespace spoofkit

#endif  // SPOOFKIT_CONFIG_H_
