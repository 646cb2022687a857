// include/spoofkit/optim.h

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

#ifndef SPOOFKIT_OPTIM_H_
#define SPOOFKIT_OPTIM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "spoofkit/common.h"
#include "spoofkit/objective.h"

namespace spoofkit {

// ---------------------------------------------------------------------------
// Adam
// ---------------------------------------------------------------------------

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<double> m;  // first-moment estimate
  std::vector<double> v;  // second-moment estimate (componentwise >= 0)
  uint64_t t = 0;         // completed steps
  AdamConfig config;
};

AdamState make_adam_state(size_t dim, AdamConfig config = {});

// One bias-corrected Adam step in place.  Throws NumericError when the
// incoming gradient is non-finite, RangeError on dimension mismatch.
void adam_step(AdamState& state, std::span<double> theta,
               std::span<const double> g, double lr);

// eta_min + (eta0 - eta_min) * (1 + cos(pi * step / total)) / 2.
// Requires 0 <= step <= total and total >= 1.
double cosine_lr(size_t step, size_t total, double eta0, double eta_min);

// True when the minimum of `dev_losses` lies `patience` or more entries
// before the last one; ties resolve to the earliest minimum.
bool early_stop(std::span<const double> dev_losses, size_t patience = 10);

// ---------------------------------------------------------------------------
// Hessian-vector products
// ---------------------------------------------------------------------------

enum class HvpMode {
  kExact,             // forward-over-reverse through the objective's tape
  kFiniteDifference,  // central difference of gradients; cross-check only
};

std::vector<double> hvp_fd(const Objective& obj, std::span<const double> theta,
                           std::span<const double> v, const Batch& batch);

std::vector<double> hvp_eval(const Objective& obj, HvpMode mode,
                             std::span<const double> theta,
                             std::span<const double> v, const Batch& batch);

// ---------------------------------------------------------------------------
// Gradient-norm-aware step
//
// One iteration of the flat-minima update: the loss gradient is combined
// with a scaled gradient-norm gradient and the sum is fed through Adam's
// moment updates in place of the raw gradient.  With alpha == 0 the step
// reduces to (and bitwise matches) a plain Adam step.
// ---------------------------------------------------------------------------

struct GamConfig {
  double rho = 0.0;    // perturbation radius; see gam_default_rho
  double alpha = 0.3;  // trade-off coefficient, >= 0
  double xi = 1e-12;   // normalization guard, > 0
  size_t batch = 32;   // batch size the trainer slices per step
  bool rho_linear_decay = false;
  HvpMode hvp_mode = HvpMode::kExact;
};

// 0.05 * (1 + ||theta0||): radius proportional to the initial weight scale.
double gam_default_rho(std::span<const double> theta0);

// Effective radius at `step` of `total`: constant, or linearly decayed to 0
// when the toggle is on.  Requires step <= total.
double gam_rho_at(const GamConfig& cfg, size_t step, size_t total);

// Per-step intermediates, exposed for logging and tests.
struct GamStepTrace {
  double loss = 0.0;
  double rho = 0.0;
  std::vector<double> h_loss;     // gradient at theta
  std::vector<double> f;          // curvature direction H * normalized(h_loss)
  std::vector<double> theta_adv;  // theta + rho * normalized(f)
  std::vector<double> h_norm;     // rho * H(theta_adv) * normalized(grad_adv)
  std::vector<double> combined;   // h_loss + alpha * h_norm
};

// Advances theta by one combined step and returns the batch loss at the
// pre-step theta.  Throws NumericError when any intermediate is non-finite
// (the trace, if given, holds whatever was computed).
double gam_step(const Objective& obj, std::vector<double>& theta,
                const Batch& batch, const GamConfig& cfg, double lr,
                AdamState& adam, GamStepTrace* trace = nullptr);

// ---------------------------------------------------------------------------
// First-order flatness probe: a Monte-Carlo lower bound of the maximum
// gradient norm over the radius-rho ball, times rho.  Probe 0 is theta
// itself; the rest are uniform ball samples.
// ---------------------------------------------------------------------------

struct FlatnessEstimate {
  double rho = 0.0;
  double r_hat = 0.0;
  size_t n_samples = 0;
};

FlatnessEstimate estimate_flatness(const Objective& obj,
                                   std::span<const double> theta,
                                   const Batch& batch, double rho,
                                   size_t n_samples, Rng& rng);

}  // namespace spoofkit

#endif  // SPOOFKIT_OPTIM_H_
