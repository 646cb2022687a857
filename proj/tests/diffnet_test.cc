// tests/diffnet_test.cc

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
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "doctest.h"
#include "spoofkit/autodiff.h"
#include "spoofkit/checkpoint.h"
#include "spoofkit/common.h"
#include "spoofkit/net.h"
#include "spoofkit/net_types.h"
#include "spoofkit/objective.h"
#include "spoofkit/waveform.h"

namespace spoofkit {
namespace {

constexpr double kLn2 = 0.693147180559945309;

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

std::vector<double> random_theta(const ModelSpec& spec, uint64_t seed) {
  Rng rng = make_rng(seed);
  return init_params(spec, rng);
}

// Central finite differences of obj.loss, the independent reference the
// reverse-mode gradient is held against.
std::vector<double> fd_grad(const Objective& obj, std::vector<double> theta,
                            const Batch& batch, double h = 1e-5) {
  std::vector<double> g(theta.size());
  for (size_t i = 0; i < theta.size(); ++i) {
    const double keep = theta[i];
    theta[i] = keep + h;
    const double up = obj.loss(theta, batch);
    theta[i] = keep - h;
    const double dn = obj.loss(theta, batch);
    theta[i] = keep;
    g[i] = (up - dn) / (2.0 * h);
  }
  return g;
}

void check_grad_close(const std::vector<double>& got,
                      const std::vector<double>& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (size_t i = 0; i < got.size(); ++i) {
    const double scale = std::max(1.0, std::abs(want[i]));
    CHECK(std::abs(got[i] - want[i]) <= tol * scale);
  }
}

// Naive forward pass + cross-entropy written independently of the library
// code: plain nested loops, its own max-shifted log-sum-exp.
double naive_mlp_loss(const ModelSpec& spec, std::span<const double> theta,
                      const Batch& batch) {
  double total = 0.0;
  for (size_t r = 0; r < batch.rows; ++r) {
    std::vector<double> act(batch.row(r).begin(), batch.row(r).end());
    size_t off = 0;
    for (size_t l = 0; l + 1 < spec.widths.size(); ++l) {
      const size_t fan_in = spec.widths[l];
      const size_t fan_out = spec.widths[l + 1];
      std::vector<double> next(fan_out, 0.0);
      for (size_t o = 0; o < fan_out; ++o)
        for (size_t i = 0; i < fan_in; ++i)
          next[o] += theta[off + o * fan_in + i] * act[i];
      off += fan_out * fan_in;
      for (size_t o = 0; o < fan_out; ++o) next[o] += theta[off + o];
      off += fan_out;
      if (l + 2 < spec.widths.size())
        for (double& v : next)
          if (v < 0.0) v *= spec.leaky_slope;
      act = std::move(next);
    }
    const double mx = std::max(act[0], act[1]);
    const double lse = mx + std::log(std::exp(act[0] - mx) +
                                     std::exp(act[1] - mx));
    total += batch.labels[r].bonafide * (lse - act[0]) +
             batch.labels[r].spoof * (lse - act[1]);
  }
  return total / static_cast<double>(batch.rows);
}

TEST_CASE("dual numbers carry exact tangents through every operation") {
  const Dual a{2.0, 1.0};  // x = 2, dx = 1
  const Dual b{3.0, 0.0};

  CHECK((a + b).v == 5.0);
  CHECK((a + b).d == 1.0);
  CHECK((a - b).d == 1.0);
  CHECK((b - a).d == -1.0);
  CHECK((-a).d == -1.0);
  CHECK((a * a).v == 4.0);
  CHECK((a * a).d == 4.0);  // d(x^2) = 2x
  CHECK((a / b).d == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // d(1/x) = -1/x^2 at x = 2
  CHECK((b / a).d == doctest::Approx(-3.0 / 4.0).epsilon(1e-15));

  const Dual e = exp(a);
  CHECK(e.v == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
  CHECK(e.d == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
  const Dual l = log(a);
  CHECK(l.d == doctest::Approx(0.5).epsilon(1e-15));
  const Dual t = tanh(a);
  const double th = std::tanh(2.0);
  CHECK(t.d == doctest::Approx(1.0 - th * th).epsilon(1e-12));
}

TEST_CASE("tape primitives match central finite differences") {
  // f(a, b) through the tape, differentiated in reverse, compared against
  // finite differences of the same construction re-evaluated at shifted
  // inputs.
  using Build = std::function<Tape<double>::Var(Tape<double>&,
                                                Tape<double>::Var,
                                                Tape<double>::Var)>;
  struct OpCase {
    const char* name;
    Build build;
  };
  const std::vector<OpCase> ops = {
      {"add", [](Tape<double>& t, auto a, auto b) { return t.add(a, b); }},
      {"sub", [](Tape<double>& t, auto a, auto b) { return t.sub(a, b); }},
      {"mul", [](Tape<double>& t, auto a, auto b) { return t.mul(a, b); }},
      {"div", [](Tape<double>& t, auto a, auto b) { return t.div(a, b); }},
      {"neg", [](Tape<double>& t, auto a, auto) { return t.neg(a); }},
      {"add_const",
       [](Tape<double>& t, auto a, auto) { return t.add_const(a, 1.7); }},
      {"sub_from_const",
       [](Tape<double>& t, auto a, auto) { return t.sub_from_const(2.5, a); }},
      {"mul_const",
       [](Tape<double>& t, auto a, auto) { return t.mul_const(a, -1.3); }},
      {"fma_const",
       [](Tape<double>& t, auto a, auto b) { return t.fma_const(a, b, 0.6); }},
      {"exp", [](Tape<double>& t, auto a, auto) { return t.exp_(a); }},
      {"log", [](Tape<double>& t, auto a, auto) { return t.log_(a); }},
      {"tanh", [](Tape<double>& t, auto a, auto) { return t.tanh_(a); }},
      {"leaky_pos",
       [](Tape<double>& t, auto a, auto) { return t.leaky_relu(a, 0.01); }},
      {"composite",
       [](Tape<double>& t, auto a, auto b) {
         return t.tanh_(t.add(t.mul(t.exp_(t.mul_const(a, 0.3)), b),
                              t.div(a, b)));
       }},
  };

  const double a0 = 0.8, b0 = 1.4, h = 1e-6;
  for (const OpCase& op : ops) {
    CAPTURE(op.name);
    auto eval = [&](double av, double bv, double* da, double* db) {
      Tape<double> tape;
      auto a = tape.leaf(av);
      auto b = tape.leaf(bv);
      auto out = op.build(tape, a, b);
      if (da != nullptr) {
        tape.backward(out);
        *da = tape.adjoint(a);
        *db = tape.adjoint(b);
      }
      return tape.value(out);
    };
    double da = 0.0, db = 0.0;
    eval(a0, b0, &da, &db);
    const double fa =
        (eval(a0 + h, b0, nullptr, nullptr) -
         eval(a0 - h, b0, nullptr, nullptr)) /
        (2.0 * h);
    const double fb =
        (eval(a0, b0 + h, nullptr, nullptr) -
         eval(a0, b0 - h, nullptr, nullptr)) /
        (2.0 * h);
    CHECK(std::abs(da - fa) <= 1e-6 * std::max(1.0, std::abs(fa)));
    CHECK(std::abs(db - fb) <= 1e-6 * std::max(1.0, std::abs(fb)));
  }

  // The negative branch of the leaky rectifier.
  Tape<double> tape;
  auto x = tape.leaf(-0.7);
  auto y = tape.leaky_relu(x, 0.01);
  tape.backward(y);
  CHECK(tape.value(y) == doctest::Approx(-0.007).epsilon(1e-15));
  CHECK(tape.adjoint(x) == 0.01);
}

TEST_CASE("tape accumulates fan-out adjoints") {
  // f = x*x: the same leaf feeds one node twice.
  Tape<double> t1;
  auto x = t1.leaf(3.0);
  auto sq = t1.mul(x, x);
  t1.backward(sq);
  CHECK(t1.adjoint(x) == 6.0);

  // Diamond: f = (x + y) * (x - y); df/dx = 2x, df/dy = -2y.
  Tape<double> t2;
  auto a = t2.leaf(2.0);
  auto b = t2.leaf(0.5);
  auto out = t2.mul(t2.add(a, b), t2.sub(a, b));
  t2.backward(out);
  CHECK(t2.adjoint(a) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(t2.adjoint(b) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("mlp gradient matches finite differences on random small models") {
  // Twenty random instances, every one at most 100 parameters.
  Rng meta = make_rng(50);
  std::uniform_int_distribution<size_t> d_in(2, 5);
  std::uniform_int_distribution<size_t> d_h(2, 7);
  std::uniform_int_distribution<size_t> d_rows(1, 6);
  for (int inst = 0; inst < 20; ++inst) {
    ModelSpec spec;
    spec.widths = {d_in(meta), d_h(meta), 2};
    if (spec.param_count() > 100) continue;
    CAPTURE(inst);
    const MlpObjective obj(spec);
    const std::vector<double> theta =
        random_theta(spec, 1000 + static_cast<uint64_t>(inst));
    const Batch batch = random_batch(d_rows(meta), spec.d_in(),
                                     2000 + static_cast<uint64_t>(inst));
    double loss_from_grad = 0.0;
    const std::vector<double> g = obj.grad(theta, batch, &loss_from_grad);
    CHECK(loss_from_grad == doctest::Approx(obj.loss(theta, batch))
                                .epsilon(1e-14));
    check_grad_close(g, fd_grad(obj, theta, batch), 1e-6);
  }
}

TEST_CASE("gradient vanishes at a perfect fit") {
  ModelSpec spec;
  spec.widths = {2, 3, 2};
  std::vector<double> theta(spec.param_count(), 0.0);
  // First hidden unit copies x[0]; output spreads it to [+30, -30].
  theta[0] = 1.0;                      // W0[0,0]
  const size_t w1 = 3 * 2 + 3;         // offset of layer-1 weights
  theta[w1 + 0] = 30.0;                // W1[0,0]
  theta[w1 + 3] = -30.0;               // W1[1,0]

  Batch b;
  b.rows = 1;
  b.dim = 2;
  b.features = {1.0, 0.0};
  b.labels = {SoftLabel{1.0, 0.0}};

  const MlpObjective obj(spec);
  CHECK(obj.loss(theta, b) <= 1e-9);
  for (double gi : obj.grad(theta, b))
    CHECK(std::abs(gi) <= 1e-8);
  // And the detection score strongly favors the bona fide class.
  CHECK(mlp_score(spec, theta, b.row(0)) ==
        doctest::Approx(60.0).epsilon(1e-12));
}

TEST_CASE("loss: uniform softmax, saturated logits, naive reimplementation") {
  ModelSpec spec;
  spec.widths = {3, 4, 2};
  const MlpObjective obj(spec);

  // All-zero parameters produce logits [0, 0] for every input: ln 2 nats.
  const std::vector<double> zeros(spec.param_count(), 0.0);
  const Batch b1 = random_batch(4, 3, 60);
  CHECK(std::abs(obj.loss(zeros, b1) - kLn2) <= 1e-15);
  CHECK(std::abs(mlp_loss_plain(spec, zeros, b1) - kLn2) <= 1e-15);

  // Independent naive evaluation agrees to near machine precision.
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const std::vector<double> theta = random_theta(spec, 70 + seed);
    const Batch b = random_batch(5, 3, 80 + seed);
    const double naive = naive_mlp_loss(spec, theta, b);
    CHECK(std::abs(obj.loss(theta, b) - naive) <= 1e-12);
    CHECK(std::abs(mlp_loss_plain(spec, theta, b) - naive) <= 1e-12);
  }
}

TEST_CASE("loss is invariant to row order and row duplication") {
  ModelSpec spec;
  spec.widths = {4, 5, 2};
  const MlpObjective obj(spec);
  const std::vector<double> theta = random_theta(spec, 90);
  const Batch b = random_batch(6, 4, 91);

  Batch perm = b;
  const std::vector<size_t> order = {5, 2, 0, 4, 1, 3};
  for (size_t r = 0; r < order.size(); ++r) {
    std::copy(b.row(order[r]).begin(), b.row(order[r]).end(),
              perm.features.begin() + static_cast<long>(r * b.dim));
    perm.labels[r] = b.labels[order[r]];
  }
  CHECK(std::abs(obj.loss(theta, b) - obj.loss(theta, perm)) <= 1e-12);

  Batch dup = b;
  dup.rows = 2 * b.rows;
  dup.features.insert(dup.features.end(), b.features.begin(),
                      b.features.end());
  dup.labels.insert(dup.labels.end(), b.labels.begin(), b.labels.end());
  CHECK(std::abs(obj.loss(theta, b) - obj.loss(theta, dup)) <= 1e-12);
  const std::vector<double> g1 = obj.grad(theta, b);
  const std::vector<double> g2 = obj.grad(theta, dup);
  for (size_t i = 0; i < g1.size(); ++i)
    CHECK(std::abs(g1[i] - g2[i]) <= 1e-12);
}

TEST_CASE("saturated logits stay finite") {
  ModelSpec spec;
  spec.widths = {2, 2, 2};
  std::vector<double> theta(spec.param_count(), 0.0);
  theta[0] = 1.0;          // hidden[0] = x[0]
  const size_t w1 = 2 * 2 + 2;
  theta[w1 + 0] = 1e4;     // logits [1e4, -1e4] at x = [1, 0]
  theta[w1 + 2] = -1e4;

  Batch b;
  b.rows = 1;
  b.dim = 2;
  b.features = {1.0, 0.0};
  b.labels = {SoftLabel{0.0, 1.0}};  // the maximally wrong label

  const MlpObjective obj(spec);
  const double loss = obj.loss(theta, b);
  CHECK(std::isfinite(loss));
  CHECK(loss == doctest::Approx(2e4).epsilon(1e-9));
  for (double gi : obj.grad(theta, b)) CHECK(std::isfinite(gi));
}

TEST_CASE("hvp: zero direction, quadratic oracle, symmetry") {
  // L = 1/2 theta^T A theta has Hessian exactly A.
  const std::vector<double> a = {4.0, 1.0, 0.5, 0.0,   //
                                 1.0, 3.0, 0.2, 0.1,   //
                                 0.5, 0.2, 2.0, 0.3,   //
                                 0.0, 0.1, 0.3, 1.5};
  const QuadraticObjective quad(4, a);
  const std::vector<double> theta = {0.7, -1.2, 0.4, 2.0};
  Batch dummy;
  dummy.rows = 1;
  dummy.dim = 1;
  dummy.features = {0.0};
  dummy.labels = {SoftLabel{1.0, 0.0}};

  // loss and grad agree with the closed forms.
  double expect_loss = 0.0;
  std::vector<double> expect_grad(4, 0.0);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) {
      expect_loss += 0.5 * theta[i] * a[i * 4 + j] * theta[j];
      expect_grad[i] += a[i * 4 + j] * theta[j];
    }
  CHECK(std::abs(quad.loss(theta, dummy) - expect_loss) <= 1e-12);
  const std::vector<double> g = quad.grad(theta, dummy);
  for (size_t i = 0; i < 4; ++i)
    CHECK(std::abs(g[i] - expect_grad[i]) <= 1e-12);

  // The zero direction maps to the zero vector exactly.
  const std::vector<double> zero(4, 0.0);
  for (double h : quad.hvp(theta, dummy, zero)) CHECK(h == 0.0);

  // H*v == A*v for arbitrary directions, and columns are recovered from
  // basis directions.
  const std::vector<double> v = {0.3, -0.8, 1.1, 0.25};
  const std::vector<double> hv = quad.hvp(theta, dummy, v);
  for (size_t i = 0; i < 4; ++i) {
    double want = 0.0;
    for (size_t j = 0; j < 4; ++j) want += a[i * 4 + j] * v[j];
    CHECK(std::abs(hv[i] - want) <= 1e-8);
  }
  for (size_t j = 0; j < 4; ++j) {
    std::vector<double> e(4, 0.0);
    e[j] = 1.0;
    const std::vector<double> col = quad.hvp(theta, dummy, e);
    for (size_t i = 0; i < 4; ++i)
      CHECK(std::abs(col[i] - a[i * 4 + j]) <= 1e-12);
  }

  // Hessian symmetry u^T H v == v^T H u on the real model.
  ModelSpec spec;
  spec.widths = {3, 5, 2};
  const MlpObjective obj(spec);
  const std::vector<double> th = random_theta(spec, 95);
  const Batch batch = random_batch(4, 3, 96);
  Rng rng = make_rng(97);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> du(th.size()), dv(th.size());
    for (double& x : du) x = u(rng);
    for (double& x : dv) x = u(rng);
    const std::vector<double> hu = obj.hvp(th, batch, du);
    const std::vector<double> hv2 = obj.hvp(th, batch, dv);
    const double uhv =
        std::inner_product(du.begin(), du.end(), hv2.begin(), 0.0);
    const double vhu =
        std::inner_product(dv.begin(), dv.end(), hu.begin(), 0.0);
    CHECK(std::abs(uhv - vhu) <=
          1e-6 * std::max(1.0, std::max(std::abs(uhv), std::abs(vhu))));
  }

  // Dimension mismatch is rejected.
  CHECK_THROWS_AS(quad.hvp(theta, dummy, std::vector<double>(3, 0.0)),
                  RangeError);
}

TEST_CASE("featurize: zero signal, tone localization, scale invariance") {
  // Constant zero input has zero spectral variance: the guarded
  // normalization maps it to the exact zero vector.
  Waveform silence;
  silence.sample_rate = 16000;
  silence.samples.assign(512, 0.0);
  const std::vector<double> fz = featurize(silence, 40);
  REQUIRE(fz.size() == 40);
  for (double v : fz) CHECK(v == 0.0);

  // A pure tone lands in the band its FFT bin belongs to.  A 16000-sample
  // signal zero-pads to n_fft = 16384, giving 8193 spectrum entries split
  // into 40 equal bands of 8193/40 = 204.825 bins; 1 kHz sits at bin
  // 1000 * 16384 / 16000 = 1024, i.e. band floor(1024 / 204.825) = 4.
  auto band_of = [](double freq) {
    const double bin = freq * 16384.0 / 16000.0;
    return static_cast<size_t>(bin / (8193.0 / 40.0));
  };
  auto tone_at = [](double freq) {
    Waveform t;
    t.sample_rate = 16000;
    t.samples.resize(16000);
    for (size_t i = 0; i < t.samples.size(); ++i)
      t.samples[i] = 0.5 * std::sin(2.0 * std::numbers::pi * freq *
                                    static_cast<double>(i) / 16000.0);
    return t;
  };
  const Waveform tone = tone_at(1000.0);
  const std::vector<double> ft = featurize(tone, 40);
  REQUIRE(ft.size() == 40);
  const size_t argmax = static_cast<size_t>(
      std::max_element(ft.begin(), ft.end()) - ft.begin());
  CHECK(argmax == band_of(1000.0));
  CHECK(band_of(1000.0) == 4);

  // A mid-band tone, away from any boundary, for good measure.
  const std::vector<double> ft2 = featurize(tone_at(1100.0), 40);
  const size_t argmax2 = static_cast<size_t>(
      std::max_element(ft2.begin(), ft2.end()) - ft2.begin());
  CHECK(argmax2 == band_of(1100.0));
  CHECK(band_of(1100.0) == 5);

  // Output is mean/variance normalized.
  const double mean = std::accumulate(ft.begin(), ft.end(), 0.0) / 40.0;
  double var = 0.0;
  for (double v : ft) var += (v - mean) * (v - mean);
  var /= 40.0;
  CHECK(std::abs(mean) <= 1e-9);
  CHECK(std::abs(var - 1.0) <= 1e-9);

  // Doubling the amplitude shifts every log magnitude by the same constant,
  // which the normalization removes.
  Waveform loud = tone;
  for (double& v : loud.samples) v *= 2.0;
  const std::vector<double> fl = featurize(loud, 40);
  for (size_t i = 0; i < 40; ++i) CHECK(std::abs(fl[i] - ft[i]) <= 1e-12);

  Waveform tiny;
  tiny.sample_rate = 16000;
  tiny.samples.assign(100, 0.1);
  CHECK_THROWS_AS(featurize(tiny, 10), RangeError);
  CHECK_THROWS_AS(featurize(tone, 0), RangeError);
  CHECK_THROWS_AS(featurize(silence, 100000), RangeError);
}

TEST_CASE("validate_batch rejects malformed batches") {
  Batch b = random_batch(3, 4, 99);
  CHECK_NOTHROW(validate_batch(b));

  Batch empty;
  CHECK_THROWS_AS(validate_batch(empty), RangeError);

  Batch wrong = b;
  wrong.features.pop_back();
  CHECK_THROWS_AS(validate_batch(wrong), RangeError);

  Batch labels = b;
  labels.labels.pop_back();
  CHECK_THROWS_AS(validate_batch(labels), RangeError);

  Batch off_simplex = b;
  off_simplex.labels[1] = SoftLabel{0.6, 0.6};
  CHECK_THROWS_AS(validate_batch(off_simplex), RangeError);

  Batch negative = b;
  negative.labels[0] = SoftLabel{1.5, -0.5};
  CHECK_THROWS_AS(validate_batch(negative), RangeError);
}

TEST_CASE("param_layout partitions the flat vector exactly") {
  ModelSpec small;
  small.widths = {3, 4, 2};
  const std::vector<LayoutSegment> segs = param_layout(small);
  REQUIRE(segs.size() == 4);
  CHECK(segs[0].offset == 0);
  CHECK(segs[0].rows == 4);
  CHECK(segs[0].cols == 3);
  CHECK(!segs[0].is_bias);
  CHECK(segs[1].offset == 12);
  CHECK(segs[1].is_bias);
  CHECK(segs[1].count() == 4);
  CHECK(segs[2].offset == 16);
  CHECK(segs[2].count() == 8);
  CHECK(segs[3].offset == 24);
  CHECK(segs[3].count() == 2);
  CHECK(small.param_count() == 26);

  // Segments tile [0, param_count) with no gaps for the default shape too.
  ModelSpec def;
  size_t expect = 0;
  for (const LayoutSegment& s : param_layout(def)) {
    CHECK(s.offset == expect);
    expect += s.count();
  }
  CHECK(expect == def.param_count());
  CHECK(def.param_count() == 4770);
}

TEST_CASE("init_params: deterministic, fan-in bounded") {
  ModelSpec spec;
  spec.widths = {6, 8, 2};
  Rng r1 = make_rng(101);
  Rng r2 = make_rng(101);
  const std::vector<double> t1 = init_params(spec, r1);
  const std::vector<double> t2 = init_params(spec, r2);
  REQUIRE(t1.size() == spec.param_count());
  CHECK(std::memcmp(t1.data(), t2.data(), t1.size() * sizeof(double)) == 0);
  Rng r3 = make_rng(102);
  CHECK(init_params(spec, r3) != t1);

  for (const LayoutSegment& s : param_layout(spec)) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(
                            spec.widths[s.layer]));
    for (size_t i = s.offset; i < s.offset + s.count(); ++i)
      CHECK(std::abs(t1[i]) <= bound);
  }
}

TEST_CASE("checkpoint: bit-exact round trip and corruption detection") {
  const auto dir =
      std::filesystem::temp_directory_path() / "spoofkit_ckpt_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto path = dir / "model.ckpt";

  Checkpoint c;
  c.spec.widths = {8, 16, 4, 2};
  Rng rng = make_rng(103);
  c.theta = init_params(c.spec, rng);
  save_checkpoint(c, path);

  const Checkpoint back = load_checkpoint(path);
  CHECK(back.spec == c.spec);
  REQUIRE(back.theta.size() == c.theta.size());
  CHECK(std::memcmp(back.theta.data(), c.theta.data(),
                    c.theta.size() * sizeof(double)) == 0);

  auto bytes = [&]() {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  };
  auto rewrite = [&](const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(data.data(), static_cast<long>(data.size()));
  };
  const std::string good = bytes();

  // Flip one payload byte: the checksum catches it.
  std::string corrupt = good;
  corrupt[good.size() / 2] = static_cast<char>(corrupt[good.size() / 2] ^ 0x40);
  rewrite(corrupt);
  CHECK_THROWS_AS(load_checkpoint(path), FormatError);

  // Truncate: structural failure.
  rewrite(good.substr(0, good.size() - 7));
  CHECK_THROWS_AS(load_checkpoint(path), FormatError);

  // Damage the magic.
  std::string bad_magic = good;
  bad_magic[0] = 'X';
  rewrite(bad_magic);
  CHECK_THROWS_AS(load_checkpoint(path), FormatError);

  // Flip a CRC byte.
  std::string bad_crc = good;
  bad_crc[good.size() - 1] = static_cast<char>(bad_crc[good.size() - 1] ^ 0x01);
  rewrite(bad_crc);
  CHECK_THROWS_AS(load_checkpoint(path), FormatError);

  CHECK_THROWS_AS(load_checkpoint(dir / "absent.ckpt"), IoError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace spoofkit
