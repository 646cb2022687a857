// tests/optim_test.cc

// Copyright 2026  spoofkit authors
//
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "doctest.h"
#include "spoofkit/common.h"
#include "spoofkit/net.h"
#include "spoofkit/net_types.h"
#include "spoofkit/objective.h"
#include "spoofkit/optim.h"

namespace spoofkit {
namespace {

Batch dummy_batch() {
  Batch b;
  b.rows = 1;
  b.dim = 1;
  b.features = {0.0};
  b.labels = {SoftLabel{1.0, 0.0}};
  return b;
}

Batch random_batch(size_t rows, size_t dim, uint64_t seed) {
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> p(0.0, 1.0);
  Batch b;
  b.rows = rows;
  b.dim = dim;
  b.features.resize(rows * dim);
  for (double& v : b.features) v = u(rng);
  b.labels.resize(rows);
  for (SoftLabel& y : b.labels) {
    y.bonafide = p(rng);
    y.spoof = 1.0 - y.bonafide;
  }
  return b;
}

double norm_of(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

TEST_CASE("adam: single-step oracle, zero gradient, determinism") {
  // 1-D, constant gradient 1, lr 0.1: after one step the bias-corrected
  // ratio m_hat / sqrt(v_hat) is exactly 1 (up to eps), so theta moves by
  // -lr.
  {
    AdamState st = make_adam_state(1);
    std::vector<double> theta = {0.5};
    const std::vector<double> g = {1.0};
    adam_step(st, theta, g, 0.1);
    CHECK(std::abs(theta[0] - 0.4) <= 1e-6);
    CHECK(st.t == 1);
  }

  // Zero gradient leaves parameters untouched.
  {
    AdamState st = make_adam_state(3);
    std::vector<double> theta = {1.0, -2.0, 0.25};
    const std::vector<double> before = theta;
    adam_step(st, theta, std::vector<double>(3, 0.0), 0.1);
    CHECK(std::memcmp(theta.data(), before.data(), 3 * sizeof(double)) == 0);
  }

  // A hand-rolled reference loop reproduces the full state evolution.
  {
    AdamState st = make_adam_state(2);
    std::vector<double> theta = {0.3, -0.7};
    double m0 = 0.0, m1 = 0.0, v0 = 0.0, v1 = 0.0;
    double r0 = 0.3, r1 = -0.7;
    for (int t = 1; t <= 5; ++t) {
      const std::vector<double> g = {std::cos(t * 0.7), 0.2 * t};
      const double lr = 0.05 / t;
      adam_step(st, theta, g, lr);

      m0 = 0.9 * m0 + 0.1 * g[0];
      m1 = 0.9 * m1 + 0.1 * g[1];
      v0 = 0.999 * v0 + 0.001 * g[0] * g[0];
      v1 = 0.999 * v1 + 0.001 * g[1] * g[1];
      const double bc1 = 1.0 - std::pow(0.9, t);
      const double bc2 = 1.0 - std::pow(0.999, t);
      r0 -= lr * (m0 / bc1) / (std::sqrt(v0 / bc2) + 1e-8);
      r1 -= lr * (m1 / bc1) / (std::sqrt(v1 / bc2) + 1e-8);
      CHECK(std::abs(theta[0] - r0) <= 1e-15);
      CHECK(std::abs(theta[1] - r1) <= 1e-15);
      CHECK(std::abs(st.m[0] - m0) <= 1e-15);
      CHECK(std::abs(st.v[1] - v1) <= 1e-15);
    }
    CHECK(st.t == 5);
  }

  // Identical states and gradients give bitwise identical trajectories.
  {
    AdamState a = make_adam_state(4);
    AdamState b = make_adam_state(4);
    std::vector<double> ta = {0.1, 0.2, 0.3, 0.4};
    std::vector<double> tb = ta;
    Rng rng = make_rng(110);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 50; ++t) {
      std::vector<double> g(4);
      for (double& v : g) v = u(rng);
      adam_step(a, ta, g, 0.01);
      adam_step(b, tb, g, 0.01);
    }
    CHECK(std::memcmp(ta.data(), tb.data(), 4 * sizeof(double)) == 0);
    CHECK(std::memcmp(a.m.data(), b.m.data(), 4 * sizeof(double)) == 0);
    CHECK(std::memcmp(a.v.data(), b.v.data(), 4 * sizeof(double)) == 0);
  }

  // Error paths.
  AdamState st = make_adam_state(2);
  std::vector<double> theta = {0.0, 0.0};
  CHECK_THROWS_AS(adam_step(st, theta, std::vector<double>(3, 0.0), 0.1),
                  RangeError);
  CHECK_THROWS_AS(
      adam_step(st, theta,
                std::vector<double>{std::numeric_limits<double>::quiet_NaN(),
                                    0.0},
                0.1),
      NumericError);
  CHECK_THROWS_AS(adam_step(st, theta, std::vector<double>(2, 0.0), -0.1),
                  RangeError);
}

TEST_CASE("cosine_lr: endpoints, midpoint, monotone, bounded") {
  const double eta0 = 0.01, eta_min = 1e-8;
  CHECK(std::abs(cosine_lr(0, 100, eta0, eta_min) - eta0) <= 1e-17);
  CHECK(std::abs(cosine_lr(100, 100, eta0, eta_min) - eta_min) <= 1e-17);
  CHECK(std::abs(cosine_lr(50, 100, eta0, eta_min) -
                 0.5 * (eta0 + eta_min)) <= 1e-15);

  double prev = cosine_lr(0, 37, eta0, eta_min);
  for (size_t s = 1; s <= 37; ++s) {
    const double cur = cosine_lr(s, 37, eta0, eta_min);
    CHECK(cur <= prev);
    CHECK(cur >= eta_min);
    CHECK(cur <= eta0);
    prev = cur;
  }

  CHECK_THROWS_AS(cosine_lr(0, 0, eta0, eta_min), RangeError);
  CHECK_THROWS_AS(cosine_lr(11, 10, eta0, eta_min), RangeError);
  CHECK_THROWS_AS(cosine_lr(0, 10, 1e-9, 1e-8), RangeError);
}

TEST_CASE("early_stop: the ten-epoch patience rule") {
  // Strictly decreasing: the best is always the last entry.
  std::vector<double> falling(20);
  for (size_t i = 0; i < falling.size(); ++i)
    falling[i] = 1.0 - 0.01 * static_cast<double>(i);
  CHECK(!early_stop(falling));

  // Best at epoch 0 followed by ten epochs with no improvement: stop.
  std::vector<double> stale = {0.5};
  for (int i = 0; i < 10; ++i) stale.push_back(0.6);
  CHECK(early_stop(stale));
  // One epoch earlier it is still within patience.
  stale.pop_back();
  CHECK(!early_stop(stale));

  // Best at epoch 5 of 12: only 6 epochs stale.
  std::vector<double> mid(12, 1.0);
  mid[5] = 0.1;
  CHECK(!early_stop(mid));

  // Ties resolve to the earliest minimum: a plateau of equal losses counts
  // as stale from its first entry.
  CHECK(early_stop(std::vector<double>(11, 0.42)));
  CHECK(!early_stop(std::vector<double>(10, 0.42)));

  // Custom patience.
  CHECK(early_stop(std::vector<double>{2.0, 1.0, 2.0, 2.0, 2.0}, 3));
  CHECK(!early_stop(std::vector<double>{2.0, 1.0, 2.0, 2.0}, 3));

  CHECK_THROWS_AS(early_stop(std::vector<double>{}), RangeError);
}

TEST_CASE("gam_step on the 1-D quadratic matches the closed form") {
  // L = theta^2 / 2, theta = 2, rho = 0.1:
  //   h_loss = 2, f = 1, theta_adv = 2.1, h_norm = 0.1,
  //   combined = 2 + 0.1 * alpha.
  const QuadraticObjective quad(1, {1.0});
  const Batch batch = dummy_batch();

  GamConfig cfg;
  cfg.rho = 0.1;
  cfg.alpha = 0.3;
  std::vector<double> theta = {2.0};
  AdamState adam = make_adam_state(1);
  GamStepTrace trace;
  const double loss = gam_step(quad, theta, batch, cfg, 0.01, adam, &trace);

  CHECK(std::abs(loss - 2.0) <= 1e-12);
  CHECK(trace.rho == 0.1);
  REQUIRE(trace.h_loss.size() == 1);
  CHECK(std::abs(trace.h_loss[0] - 2.0) <= 1e-10);
  CHECK(std::abs(trace.f[0] - 1.0) <= 1e-10);
  CHECK(std::abs(trace.theta_adv[0] - 2.1) <= 1e-10);
  CHECK(std::abs(trace.h_norm[0] - 0.1) <= 1e-10);
  CHECK(std::abs(trace.combined[0] - 2.03) <= 1e-10);

  // The combined vector goes through Adam's moments exactly as a gradient
  // would.
  std::vector<double> replay = {2.0};
  AdamState adam2 = make_adam_state(1);
  adam_step(adam2, replay, trace.combined, 0.01);
  CHECK(replay[0] == theta[0]);
  CHECK(adam2.m[0] == adam.m[0]);
  CHECK(adam2.v[0] == adam.v[0]);
}

TEST_CASE("gam_step with alpha 0 is bitwise plain Adam") {
  ModelSpec spec;
  spec.widths = {4, 6, 2};
  const MlpObjective obj(spec);
  Rng rng = make_rng(120);
  std::vector<double> t_gam = init_params(spec, rng);
  std::vector<double> t_adam = t_gam;
  const Batch batch = random_batch(8, 4, 121);

  GamConfig cfg;
  cfg.rho = 0.05;
  cfg.alpha = 0.0;
  AdamState s_gam = make_adam_state(t_gam.size());
  AdamState s_adam = make_adam_state(t_adam.size());

  for (size_t step = 0; step < 100; ++step) {
    const double lr = cosine_lr(step, 100, 0.01, 1e-5);
    gam_step(obj, t_gam, batch, cfg, lr, s_gam);
    const std::vector<double> g = obj.grad(t_adam, batch);
    adam_step(s_adam, t_adam, g, lr);
    REQUIRE(std::memcmp(t_gam.data(), t_adam.data(),
                        t_gam.size() * sizeof(double)) == 0);
  }
  CHECK(std::memcmp(s_gam.m.data(), s_adam.m.data(),
                    s_gam.m.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(s_gam.v.data(), s_adam.v.data(),
                    s_gam.v.size() * sizeof(double)) == 0);
  CHECK(s_gam.t == s_adam.t);
}

TEST_CASE("gam_step perturbation lands exactly on the rho sphere") {
  // Whenever ||f|| dwarfs xi, theta_adv sits at distance rho from theta.
  Rng rng = make_rng(122);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Batch batch = dummy_batch();
  for (int trial = 0; trial < 10; ++trial) {
    const size_t d = 5;
    // Random symmetric positive-definite A = M^T M + I.
    std::vector<double> m(d * d);
    for (double& v : m) v = u(rng);
    std::vector<double> a(d * d, 0.0);
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) {
        for (size_t k = 0; k < d; ++k) a[i * d + j] += m[k * d + i] * m[k * d + j];
        if (i == j) a[i * d + j] += 1.0;
      }
    const QuadraticObjective quad(d, a);
    std::vector<double> theta(d);
    for (double& v : theta) v = u(rng) + 2.0;  // keep gradients well away from 0

    GamConfig cfg;
    cfg.rho = 0.3;
    cfg.alpha = 1.0;
    AdamState adam = make_adam_state(d);
    GamStepTrace trace;
    std::vector<double> th = theta;
    gam_step(quad, th, batch, cfg, 0.001, adam, &trace);

    std::vector<double> delta(d);
    for (size_t i = 0; i < d; ++i) delta[i] = trace.theta_adv[i] - theta[i];
    CHECK(std::abs(norm_of(delta) - cfg.rho) <= 1e-9);
  }
}

TEST_CASE("gam defaults and radius schedule") {
  const std::vector<double> theta0 = {3.0, 4.0};
  CHECK(std::abs(gam_default_rho(theta0) - 0.3) <= 1e-15);

  GamConfig cfg;
  cfg.rho = 0.2;
  CHECK(gam_rho_at(cfg, 7, 10) == 0.2);  // constant by default

  cfg.rho_linear_decay = true;
  CHECK(gam_rho_at(cfg, 0, 10) == 0.2);
  CHECK(std::abs(gam_rho_at(cfg, 5, 10) - 0.1) <= 1e-15);
  CHECK(gam_rho_at(cfg, 10, 10) == 0.0);
  CHECK_THROWS_AS(gam_rho_at(cfg, 11, 10), RangeError);

  GamConfig bad;
  bad.xi = 0.0;
  std::vector<double> th = {1.0};
  AdamState st = make_adam_state(1);
  const QuadraticObjective quad(1, {1.0});
  CHECK_THROWS_AS(gam_step(quad, th, dummy_batch(), bad, 0.01, st),
                  ConfigError);
}

TEST_CASE("finite-difference HVP cross-checks the exact mode") {
  // Exact on quadratics: the gradient is linear, so the central difference
  // is exact up to rounding.
  const std::vector<double> a = {2.0, 0.5, 0.0,  //
                                 0.5, 1.5, 0.3,  //
                                 0.0, 0.3, 1.0};
  const QuadraticObjective quad(3, a);
  const std::vector<double> theta = {0.4, -0.2, 0.9};
  const std::vector<double> v = {1.0, 2.0, -0.5};
  const Batch db = dummy_batch();
  const std::vector<double> fd = hvp_fd(quad, theta, v, db);
  for (size_t i = 0; i < 3; ++i) {
    double want = 0.0;
    for (size_t j = 0; j < 3; ++j) want += a[i * 3 + j] * v[j];
    CHECK(std::abs(fd[i] - want) <= 1e-6);
  }

  // Zero direction short-circuits to the zero vector.
  for (double h : hvp_fd(quad, theta, std::vector<double>(3, 0.0), db))
    CHECK(h == 0.0);

  // On the real model the two modes agree to about the FD truncation error.
  ModelSpec spec;
  spec.widths = {3, 5, 2};
  const MlpObjective obj(spec);
  Rng rng = make_rng(123);
  const std::vector<double> th = init_params(spec, rng);
  const Batch batch = random_batch(6, 3, 124);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> dir(th.size());
    for (double& x : dir) x = u(rng);
    const std::vector<double> exact =
        hvp_eval(obj, HvpMode::kExact, th, dir, batch);
    const std::vector<double> approx =
        hvp_eval(obj, HvpMode::kFiniteDifference, th, dir, batch);
    REQUIRE(exact.size() == approx.size());
    for (size_t i = 0; i < exact.size(); ++i)
      CHECK(std::abs(exact[i] - approx[i]) <=
            1e-3 * std::max(1.0, std::abs(exact[i])));
  }
}

TEST_CASE("estimate_flatness: probe zero, ball maximum, monotonicity") {
  const Batch db = dummy_batch();

  // A single probe is theta itself: R_hat = rho * ||grad(theta)||.
  {
    const QuadraticObjective quad(2, {1.0, 0.0, 0.0, 1.0});
    const std::vector<double> theta = {0.6, -0.8};  // gradient norm exactly 1
    Rng rng = make_rng(130);
    const FlatnessEstimate est =
        estimate_flatness(quad, theta, db, 0.5, 1, rng);
    CHECK(est.n_samples == 1);
    CHECK(est.rho == 0.5);
    CHECK(std::abs(est.r_hat - 0.5) <= 1e-12);
  }

  // L = ||theta||^2/2 at the origin: the max gradient norm over the unit
  // ball is 1, approached from inside as probes accumulate.
  {
    const QuadraticObjective quad(2, {1.0, 0.0, 0.0, 1.0});
    const std::vector<double> theta = {0.0, 0.0};
    Rng rng = make_rng(131);
    const FlatnessEstimate est =
        estimate_flatness(quad, theta, db, 1.0, 1000, rng);
    CHECK(est.r_hat >= 0.9);
    CHECK(est.r_hat <= 1.0 + 1e-9);
  }

  // Running max: more probes from the same stream never decrease R_hat.
  {
    const QuadraticObjective quad(3, {2.0, 0.1, 0.0,  //
                                      0.1, 1.0, 0.2,  //
                                      0.0, 0.2, 0.5});
    const std::vector<double> theta = {0.3, 0.1, -0.4};
    double prev = 0.0;
    for (size_t n : {1UL, 10UL, 100UL, 1000UL}) {
      Rng rng = make_rng(132);
      const FlatnessEstimate est =
          estimate_flatness(quad, theta, db, 0.7, n, rng);
      CHECK(est.r_hat >= prev);
      prev = est.r_hat;
    }
  }

  // At the origin of an isotropic quadratic the probe gradient norm is
  // linear in the radius, so the rho-scaled estimate is exactly homogeneous
  // of degree two on a fixed probe stream.
  {
    const QuadraticObjective quad(2, {1.0, 0.0, 0.0, 1.0});
    const std::vector<double> theta = {0.0, 0.0};
    Rng r1 = make_rng(133);
    Rng r2 = make_rng(133);
    const FlatnessEstimate small =
        estimate_flatness(quad, theta, db, 0.5, 200, r1);
    const FlatnessEstimate big =
        estimate_flatness(quad, theta, db, 1.0, 200, r2);
    CHECK(std::abs(big.r_hat - 4.0 * small.r_hat) <= 1e-9);
  }

  // Error paths.
  const QuadraticObjective quad(1, {1.0});
  const std::vector<double> theta = {0.0};
  Rng rng = make_rng(134);
  CHECK_THROWS_AS(estimate_flatness(quad, theta, db, 0.0, 10, rng),
                  RangeError);
  CHECK_THROWS_AS(estimate_flatness(quad, theta, db, 0.5, 0, rng),
                  RangeError);
}

}  // namespace
}  // namespace spoofkit
