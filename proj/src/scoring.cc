// src/scoring.cc

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

#include "spoofkit/scoring.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace spoofkit {

namespace {

void require_both_classes(const ScoreSet& s, const char* who) {
  size_t nb = 0, ns = 0;
  for (const TrialScore& t : s.trials)
    (t.label == Label::kBonafide ? nb : ns) += 1;
  if (nb == 0 || ns == 0)
    throw RangeError(std::string(who) +
                     ": need at least one bona fide and one spoof trial");
}

// All achievable decision regions: each distinct score as a threshold
// ("accept at or above"), plus one threshold above the maximum.
std::vector<double> candidate_thresholds(const ScoreSet& s) {
  std::vector<double> c;
  c.reserve(s.trials.size() + 1);
  for (const TrialScore& t : s.trials) c.push_back(t.score);
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  c.push_back(c.back() + 1.0);
  return c;
}

double softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

}  // namespace

void validate_score_set(const ScoreSet& s) {
  std::set<std::string> ids;
  for (const TrialScore& t : s.trials) {
    if (!std::isfinite(t.score))
      throw RangeError("score set: non-finite score for trial '" +
                       t.trial_id + "'");
    if (!ids.insert(t.trial_id).second)
      throw RangeError("score set: duplicate trial id '" + t.trial_id + "'");
  }
}

std::pair<double, double> error_rates(const ScoreSet& s, double tau) {
  require_both_classes(s, "error_rates");
  size_t nb = 0, ns = 0, miss = 0, fa = 0;
  for (const TrialScore& t : s.trials) {
    if (t.label == Label::kBonafide) {
      ++nb;
      if (t.score < tau) ++miss;
    } else {
      ++ns;
      if (t.score >= tau) ++fa;
    }
  }
  return {static_cast<double>(miss) / static_cast<double>(nb),
          static_cast<double>(fa) / static_cast<double>(ns)};
}

double dcf(const ScoreSet& s, double tau, const DcfParams& p) {
  const auto [p_miss, p_fa] = error_rates(s, tau);
  return p.beta() * p_miss + p_fa;
}

MinDcfResult min_dcf(const ScoreSet& s, const DcfParams& p) {
  require_both_classes(s, "min_dcf");
  MinDcfResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (double tau : candidate_thresholds(s)) {
    const double v = dcf(s, tau, p);
    if (v < best.value) {  // strict: ties keep the smallest threshold
      best.value = v;
      best.threshold = tau;
    }
  }
  return best;
}

double act_dcf(const ScoreSet& s, const DcfParams& p) {
  return dcf(s, std::log(p.beta()), p);
}

double cllr(const ScoreSet& s) {
  require_both_classes(s, "cllr");
  double acc_b = 0.0, acc_s = 0.0;
  size_t nb = 0, ns = 0;
  for (const TrialScore& t : s.trials) {
    if (t.label == Label::kBonafide) {
      acc_b += softplus(-t.score);
      ++nb;
    } else {
      acc_s += softplus(t.score);
      ++ns;
    }
  }
  const double ln2 = std::log(2.0);
  return 0.5 * (acc_b / (static_cast<double>(nb) * ln2) +
                acc_s / (static_cast<double>(ns) * ln2));
}

EerResult eer(const ScoreSet& s) {
  require_both_classes(s, "eer");
  const std::vector<double> taus = candidate_thresholds(s);

  double prev_tau = 0.0, prev_miss = 0.0, prev_fa = 0.0, prev_d = -1.0;
  bool have_prev = false;
  for (double tau : taus) {
    const auto [p_miss, p_fa] = error_rates(s, tau);
    const double d = p_miss - p_fa;
    if (d >= 0.0) {
      if (d == 0.0 || !have_prev) return EerResult{p_miss, tau};
      // Sign change between the previous region and this one: interpolate.
      const double t = -prev_d / (d - prev_d);
      return EerResult{prev_miss + t * (p_miss - prev_miss),
                       prev_tau + t * (tau - prev_tau)};
    }
    prev_tau = tau;
    prev_miss = p_miss;
    prev_fa = p_fa;
    prev_d = d;
    have_prev = true;
  }
  // Unreachable: the last region is (P_miss, P_fa) = (1, 0) with d = 1.
  throw NumericError("eer: no crossing found");
}

ScoreSet fuse_average(const std::vector<ScoreSet>& sets) {
  if (sets.empty()) throw RangeError("fuse_average: no score sets");
  for (const ScoreSet& s : sets) validate_score_set(s);

  std::map<std::string, TrialScore> acc;
  for (const TrialScore& t : sets[0].trials) {
    TrialScore c = t;
    acc.emplace(t.trial_id, std::move(c));
  }
  for (size_t k = 1; k < sets.size(); ++k) {
    if (sets[k].trials.size() != sets[0].trials.size())
      throw RangeError("fuse_average: trial universes differ in size");
    for (const TrialScore& t : sets[k].trials) {
      auto it = acc.find(t.trial_id);
      if (it == acc.end())
        throw RangeError("fuse_average: trial '" + t.trial_id +
                         "' missing from the first set");
      if (it->second.label != t.label)
        throw RangeError("fuse_average: label disagreement on trial '" +
                         t.trial_id + "'");
      it->second.score += t.score;
    }
  }
  ScoreSet out;
  const double inv = 1.0 / static_cast<double>(sets.size());
  for (auto& [id, t] : acc) {
    t.score *= inv;
    out.trials.push_back(std::move(t));
  }
  return out;  // std::map iteration: sorted by trial_id
}

ScoreRows read_score_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open score file: " + path.string());
  ScoreRows rows;
  std::set<std::string> ids;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw FormatError(path.string() + ": line " + std::to_string(lineno) +
                        ": expected exactly two tab-separated fields");
    const std::string id = line.substr(0, tab);
    const std::string val = line.substr(tab + 1);
    if (id.empty())
      throw FormatError(path.string() + ": line " + std::to_string(lineno) +
                        ": empty trial id");
    size_t used = 0;
    double score = 0.0;
    try {
      score = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != val.size() || !std::isfinite(score))
      throw FormatError(path.string() + ": line " + std::to_string(lineno) +
                        ": bad score '" + val + "'");
    if (!ids.insert(id).second)
      throw FormatError(path.string() + ": line " + std::to_string(lineno) +
                        ": duplicate trial id '" + id + "'");
    rows.emplace_back(id, score);
  }
  return rows;
}

void write_score_file(const ScoreRows& rows,
                      const std::filesystem::path& path) {
  ScoreRows sorted = rows;
  std::sort(sorted.begin(), sorted.end());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write score file: " + path.string());
  for (const auto& [id, score] : sorted)
    out << id << '\t' << format_double(score) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

ScoreRows fuse_average_rows(const std::vector<ScoreRows>& inputs) {
  if (inputs.empty()) throw RangeError("fuse: no input score files");
  std::map<std::string, double> acc;
  for (const auto& [id, score] : inputs[0]) acc[id] = score;
  if (acc.size() != inputs[0].size())
    throw RangeError("fuse: duplicate trial ids in first input");
  for (size_t k = 1; k < inputs.size(); ++k) {
    if (inputs[k].size() != inputs[0].size())
      throw RangeError("fuse: inputs hold different trial counts");
    for (const auto& [id, score] : inputs[k]) {
      auto it = acc.find(id);
      if (it == acc.end())
        throw RangeError("fuse: trial '" + id +
                         "' not present in every input");
      it->second += score;
    }
  }
  ScoreRows out;
  const double inv = 1.0 / static_cast<double>(inputs.size());
  for (const auto& [id, sum] : acc) out.emplace_back(id, sum * inv);
  return out;
}

ScoreSet join_scores(const ScoreRows& rows, const DatasetManifest& manifest) {
  std::map<std::string, Label> labels;
  for (const ManifestEntry& e : manifest.entries)
    labels.emplace(e.trial_id, e.label);
  if (rows.size() != labels.size())
    throw RangeError("join: score file holds " + std::to_string(rows.size()) +
                     " trials, manifest holds " +
                     std::to_string(labels.size()));
  ScoreSet out;
  for (const auto& [id, score] : rows) {
    auto it = labels.find(id);
    if (it == labels.end())
      throw RangeError("join: scored trial '" + id + "' not in manifest");
    out.trials.push_back(TrialScore{id, it->second, score});
  }
  return out;
}

MetricReport compute_report(const ScoreSet& s, const DcfParams& p) {
  validate_score_set(s);
  require_both_classes(s, "report");
  MetricReport r;
  const MinDcfResult m = min_dcf(s, p);
  r.min_dcf = m.value;
  r.min_dcf_threshold = m.threshold;
  r.act_dcf = act_dcf(s, p);
  r.cllr = cllr(s);
  const EerResult e = eer(s);
  r.eer = e.value;
  r.eer_threshold = e.threshold;
  for (const TrialScore& t : s.trials)
    (t.label == Label::kBonafide ? r.n_bona : r.n_spoof) += 1;
  return r;
}

std::string format_report(const MetricReport& r, const DcfParams& p) {
  std::ostringstream os;
  os << "# detection metrics (higher score = more bona fide)\n";
  os << "# costs: c_miss=" << format_double(p.c_miss)
     << " c_fa=" << format_double(p.c_fa)
     << " pi_spoof=" << format_double(p.pi_spoof)
     << " beta=" << format_double(p.beta()) << "\n";
  os << "# actDCF uses the fixed Bayes threshold ln(beta) = "
     << format_double(std::log(p.beta()))
     << " on raw (uncalibrated) logit scores\n";
  os << "# Cllr in bits via overflow-safe softplus; EER by threshold sweep "
        "with linear interpolation\n";
  os << "# minDCF threshold: " << format_double(r.min_dcf_threshold)
     << "  EER threshold: " << format_double(r.eer_threshold) << "\n";
  os << "# minDCF\tactDCF\tCllr\tEER\tn_bona\tn_spoof\n";
  os << format_double(r.min_dcf) << '\t' << format_double(r.act_dcf) << '\t'
     << format_double(r.cllr) << '\t' << format_double(r.eer) << '\t'
     << r.n_bona << '\t' << r.n_spoof << '\n';
  return os.str();
}

}  // namespace spoofkit
