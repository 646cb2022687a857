// include/spoofkit/waveform.h

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

#ifndef SPOOFKIT_WAVEFORM_H_
#define SPOOFKIT_WAVEFORM_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "spoofkit/common.h"

namespace spoofkit {

// Mono audio in real amplitudes.  16-bit PCM maps onto [-1, 1] on read; all
// processing stays in double so the DSP oracles can hold tight tolerances.
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 16000;

  size_t size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

enum class Label { kBonafide, kSpoof };

std::string label_to_string(Label label);
Label label_from_string(const std::string& text);

// Two-class probability vector (bona fide, spoof).  Hard labels are the
// degenerate case; waveform mixing produces genuinely soft ones.
struct SoftLabel {
  double bonafide = 0.0;
  double spoof = 0.0;
};

inline SoftLabel soft_label(Label label) {
  return label == Label::kBonafide ? SoftLabel{1.0, 0.0} : SoftLabel{0.0, 1.0};
}

// Length normalization mode.  Only one mode exists today: truncate when too
// long, tile the signal cyclically when too short.  The enum keeps the call
// sites explicit and leaves room for alternatives.
enum class FitMode { kTruncateOrRepeat };

// Returns a waveform of exactly n samples.  Longer inputs keep their prefix;
// shorter inputs are repeated end to end until n samples are filled.  Errors
// on empty input or n == 0.
Waveform fit_length(const Waveform& w, size_t n,
                    FitMode mode = FitMode::kTruncateOrRepeat);

// One evaluation trial: an utterance with its ground-truth label.
struct ManifestEntry {
  std::string trial_id;
  std::string path;  // as written in the manifest, possibly relative
  Label label = Label::kBonafide;
  std::string speaker_id;
};

// A dataset is a TSV manifest with a required header line
//   trial_id<TAB>path<TAB>label<TAB>speaker_id
// Relative paths are resolved against the directory of the manifest file.
struct DatasetManifest {
  std::vector<ManifestEntry> entries;
  std::filesystem::path base_dir;  // directory the manifest was loaded from

  std::filesystem::path resolve_path(const ManifestEntry& e) const;
};

// Reads and validates a manifest: header present, four columns per row,
// known labels, unique trial ids.  Throws FormatError on violations.
DatasetManifest read_manifest(const std::filesystem::path& path);

// Writes a manifest with the required header.  Entry paths are written as-is.
void write_manifest(const DatasetManifest& m, const std::filesystem::path& path);

}  // namespace spoofkit

#endif  // SPOOFKIT_WAVEFORM_H_
