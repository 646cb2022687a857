// include/spoofkit/objective.h

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

#ifndef SPOOFKIT_OBJECTIVE_H_
#define SPOOFKIT_OBJECTIVE_H_

#include <span>
#include <vector>

#include "spoofkit/autodiff.h"
#include "spoofkit/net_types.h"

namespace spoofkit {

// A scalar training objective over a flat parameter vector.  Everything the
// optimizer needs: value, gradient, and exact Hessian-vector products, all
// evaluated on a caller-supplied batch.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual size_t dim() const = 0;
  virtual double loss(std::span<const double> theta,
                      const Batch& batch) const = 0;
  // Gradient; optionally reports the loss from the same pass.
  virtual std::vector<double> grad(std::span<const double> theta,
                                   const Batch& batch,
                                   double* loss_out = nullptr) const = 0;
  // Exact H*v via forward-over-reverse (dual numbers through the tape).
  virtual std::vector<double> hvp(std::span<const double> theta,
                                  const Batch& batch,
                                  std::span<const double> v) const = 0;
};

// CRTP adapter: Derived supplies one templated graph builder
//   template <typename T>
//   typename Tape<T>::Var build(Tape<T>&, std::span<const typename
//       Tape<T>::Var> params, const Batch&) const;
// and this class derives loss/grad/hvp from it, so every objective runs the
// same differentiation machinery on both scalar types.
template <class Derived>
class GraphObjective : public Objective {
 public:
  double loss(std::span<const double> theta,
              const Batch& batch) const override {
    Tape<double> tape;
    std::vector<typename Tape<double>::Var> params(theta.size());
    for (size_t i = 0; i < theta.size(); ++i) params[i] = tape.leaf(theta[i]);
    auto out = derived().template build<double>(tape, params, batch);
    return tape.value(out);
  }

  std::vector<double> grad(std::span<const double> theta, const Batch& batch,
                           double* loss_out = nullptr) const override {
    Tape<double> tape;
    std::vector<typename Tape<double>::Var> params(theta.size());
    for (size_t i = 0; i < theta.size(); ++i) params[i] = tape.leaf(theta[i]);
    auto out = derived().template build<double>(tape, params, batch);
    if (loss_out != nullptr) *loss_out = tape.value(out);
    tape.backward(out);
    std::vector<double> g(theta.size());
    for (size_t i = 0; i < theta.size(); ++i) g[i] = tape.adjoint(params[i]);
    return g;
  }

  std::vector<double> hvp(std::span<const double> theta, const Batch& batch,
                          std::span<const double> v) const override {
    if (v.size() != theta.size())
      throw RangeError("hvp: direction dimension mismatch");
    Tape<Dual> tape;
    std::vector<typename Tape<Dual>::Var> params(theta.size());
    for (size_t i = 0; i < theta.size(); ++i)
      params[i] = tape.leaf(Dual{theta[i], v[i]});
    auto out = derived().template build<Dual>(tape, params, batch);
    tape.backward(out);
    std::vector<double> hv(theta.size());
    for (size_t i = 0; i < theta.size(); ++i)
      hv[i] = tape.adjoint(params[i]).d;
    return hv;
  }

 private:
  const Derived& derived() const { return *static_cast<const Derived*>(this); }
};

// L(theta) = 1/2 theta^T A theta for a fixed symmetric matrix A, wired
// through the same tape as the real model.  The Hessian is exactly A, which
// makes this the reference harness for the optimizer and the HVP machinery.
class QuadraticObjective final : public GraphObjective<QuadraticObjective> {
 public:
  // a is dim x dim, row-major, expected symmetric.
  QuadraticObjective(size_t dim, std::vector<double> a);

  size_t dim() const override { return dim_; }
  const std::vector<double>& matrix() const { return a_; }

  template <typename T>
  typename Tape<T>::Var build(Tape<T>& tape,
                              std::span<const typename Tape<T>::Var> params,
                              const Batch& batch) const {
    (void)batch;  // the landscape is batch-independent
    using Var = typename Tape<T>::Var;
    Var total = tape.leaf(T{});
    for (size_t i = 0; i < dim_; ++i) {
      Var inner = tape.leaf(T{});
      for (size_t j = 0; j < dim_; ++j)
        inner = tape.fma_const(inner, params[j], a_[i * dim_ + j]);
      total = tape.add(total, tape.mul(params[i], inner));
    }
    return tape.mul_const(total, 0.5);
  }

 private:
  size_t dim_;
  std::vector<double> a_;
};

}  // namespace spoofkit

#endif  // SPOOFKIT_OBJECTIVE_H_
