// include/spoofkit/autodiff.h

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

#ifndef SPOOFKIT_AUTODIFF_H_
#define SPOOFKIT_AUTODIFF_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "spoofkit/common.h"

namespace spoofkit {

// First-order dual number: value plus directional derivative.  Running the
// reverse-mode pass below with T = Dual is forward-over-reverse: the tangent
// of each leaf adjoint is an exact Hessian-vector product component.
struct Dual {
  double v = 0.0;
  double d = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double value) : v(value) {}  // NOLINT: implicit by design
  constexpr Dual(double value, double tangent) : v(value), d(tangent) {}
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator-(Dual a) { return {-a.v, -a.d}; }
inline Dual operator*(Dual a, Dual b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d};
}
inline Dual operator/(Dual a, Dual b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
inline Dual& operator+=(Dual& a, Dual b) { return a = a + b; }
inline Dual exp(Dual a) {
  const double e = std::exp(a.v);
  return {e, a.d * e};
}
inline Dual log(Dual a) { return {std::log(a.v), a.d / a.v}; }
inline Dual tanh(Dual a) {
  const double t = std::tanh(a.v);
  return {t, a.d * (1.0 - t * t)};
}

inline double primal(double x) { return x; }
inline double primal(Dual x) { return x.v; }

// Minimal Wengert-list reverse-mode tape.  Nodes are appended in evaluation
// order (so every parent index is smaller than its child's), each node
// stores its local partial derivatives, and backward() is one reverse sweep.
// The scalar type T is double for plain gradients and Dual for exact
// Hessian-vector products.
template <typename T>
class Tape {
 public:
  static constexpr uint32_t kNone = std::numeric_limits<uint32_t>::max();

  struct Var {
    uint32_t idx = kNone;
  };

  // Tracked input (parameter).  Constants can use leaf() too; their adjoints
  // are simply never read.
  Var leaf(T value) { return push(value, kNone, kNone, T{}, T{}); }

  Var add(Var a, Var b) {
    return push(val(a) + val(b), a.idx, b.idx, T{1.0}, T{1.0});
  }
  Var sub(Var a, Var b) {
    return push(val(a) - val(b), a.idx, b.idx, T{1.0}, T{-1.0});
  }
  Var mul(Var a, Var b) {
    return push(val(a) * val(b), a.idx, b.idx, val(b), val(a));
  }
  Var div(Var a, Var b) {
    const T bv = val(b);
    return push(val(a) / bv, a.idx, b.idx, T{1.0} / bv,
                -val(a) / (bv * bv));
  }
  Var neg(Var a) { return push(-val(a), a.idx, kNone, T{-1.0}, T{}); }
  Var add_const(Var a, double c) {
    return push(val(a) + T{c}, a.idx, kNone, T{1.0}, T{});
  }
  Var sub_from_const(double c, Var a) {
    return push(T{c} - val(a), a.idx, kNone, T{-1.0}, T{});
  }
  Var mul_const(Var a, double c) {
    return push(val(a) * T{c}, a.idx, kNone, T{c}, T{});
  }
  // acc + c * w with constant c: one node per multiply-accumulate term.
  Var fma_const(Var acc, Var w, double c) {
    return push(val(acc) + T{c} * val(w), acc.idx, w.idx, T{1.0}, T{c});
  }
  Var exp_(Var a) {
    using std::exp;  // picks std::exp for double, the Dual overload otherwise
    const T e = exp(val(a));
    return push(e, a.idx, kNone, e, T{});
  }
  Var log_(Var a) {
    using std::log;
    return push(log(val(a)), a.idx, kNone, T{1.0} / val(a), T{});
  }
  Var tanh_(Var a) {
    using std::tanh;
    const T t = tanh(val(a));
    return push(t, a.idx, kNone, T{1.0} - t * t, T{});
  }
  // max(x, slope * x); the kink at zero takes the positive branch.
  Var leaky_relu(Var a, double slope) {
    const bool pos = primal(val(a)) > 0.0;
    const double g = pos ? 1.0 : slope;
    return push(T{g} * val(a), a.idx, kNone, T{g}, T{});
  }

  T value(Var v) const { return nodes_[v.idx].val; }

  // Reverse sweep seeding d(seed)/d(seed) = 1.  Adjoints of all earlier
  // nodes (leaves included) are valid afterwards.
  void backward(Var seed) {
    for (Node& n : nodes_) n.adj = T{};
    nodes_[seed.idx].adj = T{1.0};
    for (uint32_t i = seed.idx + 1; i-- > 0;) {
      const Node& n = nodes_[i];
      if (n.a != kNone) nodes_[n.a].adj += n.adj * n.pa;
      if (n.b != kNone) nodes_[n.b].adj += n.adj * n.pb;
    }
  }

  T adjoint(Var v) const { return nodes_[v.idx].adj; }

  size_t size() const { return nodes_.size(); }
  void clear() { nodes_.clear(); }
  void reserve(size_t n) { nodes_.reserve(n); }

 private:
  struct Node {
    T val{};
    T adj{};
    T pa{};
    T pb{};
    uint32_t a = kNone;
    uint32_t b = kNone;
  };

  T val(Var v) const { return nodes_[v.idx].val; }

  Var push(T value, uint32_t a, uint32_t b, T pa, T pb) {
    Node n;
    n.val = value;
    n.pa = pa;
    n.pb = pb;
    n.a = a;
    n.b = b;
    nodes_.push_back(n);
    return Var{static_cast<uint32_t>(nodes_.size() - 1)};
  }

  std::vector<Node> nodes_;
};

}  // namespace spoofkit

#endif  // SPOOFKIT_AUTODIFF_H_
