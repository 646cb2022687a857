// include/spoofkit/scoring.h

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

#ifndef SPOOFKIT_SCORING_H_
#define SPOOFKIT_SCORING_H_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "spoofkit/waveform.h"

namespace spoofkit {

// One scored trial.  Score polarity is fixed globally: higher means more
// bona fide (the raw logit difference, bona minus spoof).
struct TrialScore {
  std::string trial_id;
  Label label = Label::kBonafide;
  double score = 0.0;
};

struct ScoreSet {
  std::vector<TrialScore> trials;
};

// Unique ids, finite scores.  Threshold metrics additionally require at
// least one trial of each class (checked by the metrics themselves).
void validate_score_set(const ScoreSet& s);

// Detection costs.  With the defaults, beta() == 1.9 exactly.
struct DcfParams {
  double c_miss = 1.0;
  double c_fa = 10.0;
  double pi_spoof = 0.05;

  double beta() const {
    return (c_miss / c_fa) * (1.0 - pi_spoof) / pi_spoof;
  }
};

// P_miss = fraction of bona fide scored below tau (rejected);
// P_fa   = fraction of spoof scored at or above tau (accepted).
std::pair<double, double> error_rates(const ScoreSet& s, double tau);

// beta * P_miss(tau) + P_fa(tau).
double dcf(const ScoreSet& s, double tau, const DcfParams& p);

struct MinDcfResult {
  double value = 0.0;
  double threshold = 0.0;
};

// Minimum of dcf over all decision regions (distinct scores plus one region
// above the maximum); ties resolve to the smallest threshold.
MinDcfResult min_dcf(const ScoreSet& s, const DcfParams& p);

// dcf at the fixed Bayes threshold tau = ln(beta), reading scores as
// log-likelihood ratios.  Calibration-sensitive, unlike min_dcf.
double act_dcf(const ScoreSet& s, const DcfParams& p);

// 0.5 * [ mean over bona of log2(1+e^-s) + mean over spoof of log2(1+e^s) ],
// in bits, computed with overflow-safe softplus.
double cllr(const ScoreSet& s);

struct EerResult {
  double value = 0.0;
  double threshold = 0.0;
};

// Sweeps the same decision regions as min_dcf and returns the point where
// the miss rate crosses the false-alarm rate, linearly interpolating
// between adjacent regions when there is no exact tie.
EerResult eer(const ScoreSet& s);

// Per-trial arithmetic mean across sets.  All sets must hold exactly the
// same trial ids with agreeing labels; output is sorted by trial_id.
ScoreSet fuse_average(const std::vector<ScoreSet>& sets);

// ---------------------------------------------------------------------------
// Score files: UTF-8 TSV, one `trial_id<TAB>score` line per trial, no
// header, sorted by trial_id on write.
// ---------------------------------------------------------------------------

using ScoreRows = std::vector<std::pair<std::string, double>>;

ScoreRows read_score_file(const std::filesystem::path& path);
void write_score_file(const ScoreRows& rows, const std::filesystem::path& path);

// Label-free fusion of raw score rows (what the fuse subcommand does).
// Identical id universes required; output sorted by trial_id.
ScoreRows fuse_average_rows(const std::vector<ScoreRows>& inputs);

// Attaches manifest labels to score rows; every scored id must exist in the
// manifest and every manifest id must be scored.
ScoreSet join_scores(const ScoreRows& rows, const DatasetManifest& manifest);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct MetricReport {
  double min_dcf = 0.0;
  double min_dcf_threshold = 0.0;
  double act_dcf = 0.0;
  double cllr = 0.0;
  double eer = 0.0;
  double eer_threshold = 0.0;
  size_t n_bona = 0;
  size_t n_spoof = 0;
};

MetricReport compute_report(const ScoreSet& s, const DcfParams& p = {});

// Human-readable block (comment lines stating the conventions, including
// the fixed ln(beta) threshold behind actDCF) followed by one TSV line:
// minDCF  actDCF  Cllr  EER  n_bona  n_spoof.
std::string format_report(const MetricReport& r, const DcfParams& p = {});

}  // namespace spoofkit

#endif  // SPOOFKIT_SCORING_H_
