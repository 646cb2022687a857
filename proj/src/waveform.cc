// src/waveform.cc

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

#include "spoofkit/waveform.h"

#include <fstream>
#include <set>
#include <sstream>

namespace spoofkit {

std::string label_to_string(Label label) {
  return label == Label::kBonafide ? "bonafide" : "spoof";
}

Label label_from_string(const std::string& text) {
  if (text == "bonafide") return Label::kBonafide;
  if (text == "spoof") return Label::kSpoof;
  throw FormatError("unknown label '" + text + "' (expected bonafide|spoof)");
}

Waveform fit_length(const Waveform& w, size_t n, FitMode mode) {
  if (mode != FitMode::kTruncateOrRepeat)
    throw ConfigError("fit_length: unknown mode");
  if (w.samples.empty()) throw RangeError("fit_length: empty waveform");
  if (n == 0) throw RangeError("fit_length: target length must be >= 1");

  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples.resize(n);
  const size_t len = w.samples.size();
  for (size_t i = 0; i < n; ++i) out.samples[i] = w.samples[i % len];
  return out;
}

std::filesystem::path DatasetManifest::resolve_path(
    const ManifestEntry& e) const {
  std::filesystem::path p(e.path);
  if (p.is_absolute()) return p;
  return base_dir / p;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

constexpr const char* kManifestHeader = "trial_id\tpath\tlabel\tspeaker_id";

}  // namespace

DatasetManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest: " + path.string());

  DatasetManifest m;
  m.base_dir = path.has_parent_path() ? path.parent_path()
                                      : std::filesystem::path(".");

  std::string line;
  if (!std::getline(in, line))
    throw FormatError("manifest missing header line: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kManifestHeader)
    throw FormatError("manifest header must be '" +
                      std::string(kManifestHeader) + "': " + path.string());

  std::set<std::string> seen_ids;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f = split_tabs(line);
    if (f.size() != 4)
      throw FormatError("manifest line " + std::to_string(line_no) +
                        ": expected 4 tab-separated columns, got " +
                        std::to_string(f.size()));
    ManifestEntry e;
    e.trial_id = f[0];
    e.path = f[1];
    e.label = label_from_string(f[2]);
    e.speaker_id = f[3];
    if (e.trial_id.empty())
      throw FormatError("manifest line " + std::to_string(line_no) +
                        ": empty trial_id");
    if (!seen_ids.insert(e.trial_id).second)
      throw FormatError("manifest: duplicate trial_id '" + e.trial_id + "'");
    m.entries.push_back(std::move(e));
  }
  return m;
}

void write_manifest(const DatasetManifest& m,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write manifest: " + path.string());
  out << kManifestHeader << "\n";
  for (const ManifestEntry& e : m.entries) {
    out << e.trial_id << '\t' << e.path << '\t' << label_to_string(e.label)
        << '\t' << e.speaker_id << "\n";
  }
  if (!out) throw IoError("short write on manifest: " + path.string());
}

}  // namespace spoofkit
