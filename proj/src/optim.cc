// src/optim.cc

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

#include "spoofkit/optim.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spoofkit {

namespace {

double norm2(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc);
}

bool all_finite(std::span<const double> x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

AdamState make_adam_state(size_t dim, AdamConfig config) {
  AdamState s;
  s.m.assign(dim, 0.0);
  s.v.assign(dim, 0.0);
  s.t = 0;
  s.config = config;
  return s;
}

void adam_step(AdamState& state, std::span<double> theta,
               std::span<const double> g, double lr) {
  const size_t d = theta.size();
  if (state.m.size() != d || state.v.size() != d || g.size() != d)
    throw RangeError("adam_step: dimension mismatch");
  if (!all_finite(g)) throw NumericError("adam_step: non-finite gradient");
  if (!(lr >= 0.0) || !std::isfinite(lr))
    throw RangeError("adam_step: bad learning rate");

  const AdamConfig& c = state.config;
  state.t += 1;
  const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.t));
  for (size_t i = 0; i < d; ++i) {
    state.m[i] = c.beta1 * state.m[i] + (1.0 - c.beta1) * g[i];
    state.v[i] = c.beta2 * state.v[i] + (1.0 - c.beta2) * g[i] * g[i];
    const double m_hat = state.m[i] / bc1;
    const double v_hat = state.v[i] / bc2;
    theta[i] -= lr * m_hat / (std::sqrt(v_hat) + c.eps);
  }
}

double cosine_lr(size_t step, size_t total, double eta0, double eta_min) {
  if (total < 1) throw RangeError("cosine_lr: total must be >= 1");
  if (step > total) throw RangeError("cosine_lr: step beyond total");
  if (!(eta_min <= eta0))
    throw RangeError("cosine_lr: eta_min must not exceed eta0");
  const double phase = std::numbers::pi * static_cast<double>(step) /
                       static_cast<double>(total);
  return eta_min + 0.5 * (eta0 - eta_min) * (1.0 + std::cos(phase));
}

bool early_stop(std::span<const double> dev_losses, size_t patience) {
  if (dev_losses.empty()) throw RangeError("early_stop: empty history");
  size_t best = 0;
  for (size_t i = 1; i < dev_losses.size(); ++i)
    if (dev_losses[i] < dev_losses[best]) best = i;  // ties keep the earliest
  const size_t last = dev_losses.size() - 1;
  return last - best >= patience;
}

std::vector<double> hvp_fd(const Objective& obj, std::span<const double> theta,
                           std::span<const double> v, const Batch& batch) {
  const size_t d = theta.size();
  if (v.size() != d) throw RangeError("hvp_fd: dimension mismatch");
  const double v_norm = norm2(v);
  if (v_norm == 0.0) return std::vector<double>(d, 0.0);

  const double h = 1e-4 * (1.0 + norm2(theta)) / v_norm;
  std::vector<double> plus(theta.begin(), theta.end());
  std::vector<double> minus(theta.begin(), theta.end());
  for (size_t i = 0; i < d; ++i) {
    plus[i] += h * v[i];
    minus[i] -= h * v[i];
  }
  const std::vector<double> gp = obj.grad(plus, batch);
  const std::vector<double> gm = obj.grad(minus, batch);
  std::vector<double> out(d);
  for (size_t i = 0; i < d; ++i) out[i] = (gp[i] - gm[i]) / (2.0 * h);
  return out;
}

std::vector<double> hvp_eval(const Objective& obj, HvpMode mode,
                             std::span<const double> theta,
                             std::span<const double> v, const Batch& batch) {
  return mode == HvpMode::kExact ? obj.hvp(theta, batch, v)
                                 : hvp_fd(obj, theta, v, batch);
}

double gam_default_rho(std::span<const double> theta0) {
  return 0.05 * (1.0 + norm2(theta0));
}

double gam_rho_at(const GamConfig& cfg, size_t step, size_t total) {
  if (!cfg.rho_linear_decay) return cfg.rho;
  if (total < 1) throw RangeError("gam_rho_at: total must be >= 1");
  if (step > total) throw RangeError("gam_rho_at: step beyond total");
  return cfg.rho *
         (1.0 - static_cast<double>(step) / static_cast<double>(total));
}

namespace {

std::vector<double> normalized(std::span<const double> x, double xi) {
  std::vector<double> out(x.size());
  const double denom = norm2(x) + xi;
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] / denom;
  return out;
}

}  // namespace

double gam_step(const Objective& obj, std::vector<double>& theta,
                const Batch& batch, const GamConfig& cfg, double lr,
                AdamState& adam, GamStepTrace* trace) {
  const size_t d = obj.dim();
  if (theta.size() != d) throw RangeError("gam_step: theta dim mismatch");
  if (!(cfg.xi > 0.0)) throw ConfigError("gam_step: xi must be > 0");
  if (!(cfg.rho >= 0.0)) throw ConfigError("gam_step: rho must be >= 0");
  if (!(cfg.alpha >= 0.0)) throw ConfigError("gam_step: alpha must be >= 0");

  GamStepTrace local;
  GamStepTrace& tr = trace != nullptr ? *trace : local;
  tr = GamStepTrace{};
  tr.rho = cfg.rho;

  double loss = 0.0;
  tr.h_loss = obj.grad(theta, batch, &loss);
  tr.loss = loss;
  if (!std::isfinite(loss) || !all_finite(tr.h_loss))
    throw NumericError("gam_step: non-finite loss gradient");

  if (cfg.alpha == 0.0) {
    // The combined vector is exactly the loss gradient; skipping the
    // curvature passes keeps the trajectory bitwise equal to plain Adam.
    tr.f.assign(d, 0.0);
    tr.theta_adv = theta;
    tr.h_norm.assign(d, 0.0);
    tr.combined = tr.h_loss;
  } else {
    tr.f = hvp_eval(obj, cfg.hvp_mode, theta, normalized(tr.h_loss, cfg.xi),
                    batch);
    if (!all_finite(tr.f))
      throw NumericError("gam_step: non-finite curvature direction");

    const std::vector<double> f_hat = normalized(tr.f, cfg.xi);
    tr.theta_adv.resize(d);
    for (size_t i = 0; i < d; ++i)
      tr.theta_adv[i] = theta[i] + cfg.rho * f_hat[i];

    const std::vector<double> g_adv = obj.grad(tr.theta_adv, batch);
    if (!all_finite(g_adv))
      throw NumericError("gam_step: non-finite perturbed gradient");
    tr.h_norm = hvp_eval(obj, cfg.hvp_mode, tr.theta_adv,
                         normalized(g_adv, cfg.xi), batch);
    for (double& v : tr.h_norm) v *= cfg.rho;
    if (!all_finite(tr.h_norm))
      throw NumericError("gam_step: non-finite norm gradient");

    tr.combined.resize(d);
    for (size_t i = 0; i < d; ++i)
      tr.combined[i] = tr.h_loss[i] + cfg.alpha * tr.h_norm[i];
  }

  adam_step(adam, theta, tr.combined, lr);
  return loss;
}

FlatnessEstimate estimate_flatness(const Objective& obj,
                                   std::span<const double> theta,
                                   const Batch& batch, double rho,
                                   size_t n_samples, Rng& rng) {
  if (!(rho > 0.0)) throw RangeError("estimate_flatness: rho must be > 0");
  if (n_samples < 1)
    throw RangeError("estimate_flatness: need at least one probe");
  const size_t d = theta.size();
  if (obj.dim() != d) throw RangeError("estimate_flatness: dim mismatch");

  double max_norm = norm2(obj.grad(theta, batch));

  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> dir(d);
  std::vector<double> probe(d);
  for (size_t s = 1; s < n_samples; ++s) {
    for (double& v : dir) v = gauss(rng);
    double dn = norm2(dir);
    if (dn == 0.0) {
      dir[0] = 1.0;
      dn = 1.0;
    }
    // Radius rho * u^(1/d) with a Gaussian direction: uniform in the ball.
    const double r =
        rho * std::pow(unif(rng), 1.0 / static_cast<double>(d));
    for (size_t i = 0; i < d; ++i) probe[i] = theta[i] + r * dir[i] / dn;
    max_norm = std::max(max_norm, norm2(obj.grad(probe, batch)));
  }
  return FlatnessEstimate{rho, rho * max_norm, n_samples};
}

}  // namespace spoofkit
