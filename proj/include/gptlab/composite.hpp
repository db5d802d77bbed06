// Copyright 2026 The gptlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file composite.hpp
 * Joint systems built with the Kronecker product. The first factor varies
 * slowest, so the all-zeros multi-index (the joint normalisation entry) is
 * entry 0 of the joint vector.
 */

#pragma once

#include <numeric>
#include <string>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "gptlab/core.hpp"

namespace gptlab {

inline Vector kron(const Vector &a, const Vector &b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

inline Matrix kron(const Matrix &a, const Matrix &b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

/// A joint vector together with the dimensions of its factors.
struct JointState {
  std::vector<Index> dims;
  Vector joint;

  Index total_dim() const {
    return std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
  }
};

struct ProductState {
  std::vector<State> factors;
  JointState joint;
};

struct ProductEffect {
  std::vector<Effect> factors;
  Vector joint;
};

inline ProductState tensor_states(const std::vector<State> &factors,
                                  double eps = kDefaultTolerance) {
  if (factors.empty()) throw InvalidArgument("tensor_states: no factors");
  ProductState ps;
  ps.factors = factors;
  Vector acc = Vector::Ones(1);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!factors[i].is_normalised(eps))
      throw InvalidArgument("tensor_states: factor " + std::to_string(i) + " is not normalised");
    acc = kron(acc, factors[i].vector());
    ps.joint.dims.push_back(factors[i].dim());
  }
  ps.joint.joint = std::move(acc);
  return ps;
}

inline ProductState tensor_states(const State &a, const State &b,
                                  double eps = kDefaultTolerance) {
  return tensor_states(std::vector<State>{a, b}, eps);
}

inline ProductEffect tensor_effects(const std::vector<Effect> &factors) {
  if (factors.empty()) throw InvalidArgument("tensor_effects: no factors");
  ProductEffect pe;
  pe.factors = factors;
  Vector acc = Vector::Ones(1);
  for (const auto &e : factors) acc = kron(acc, e.vector());
  pe.joint = std::move(acc);
  return pe;
}

inline Transformation tensor_transformations(const Transformation &a, const Transformation &b) {
  return Transformation(kron(a.matrix(), b.matrix()), a.label() + "⊗" + b.label());
}

/// (u ⊗ ... ⊗ u) with `e` in slot `k`, for marginalising a joint vector.
inline Vector marginal_effect(const std::vector<Index> &dims, std::size_t k, const Vector &e) {
  Vector acc = Vector::Ones(1);
  for (std::size_t i = 0; i < dims.size(); ++i)
    acc = kron(acc, i == k ? e : unit_effect(dims[i]).vector());
  return acc;
}

/// Reduced vector of factor k: contract every other factor with the unit effect.
inline Vector reduce(const JointState &js, std::size_t k) {
  if (k >= js.dims.size()) throw InvalidArgument("reduce: factor index out of range");
  const Index d = js.dims[k];
  Vector out(d);
  for (Index i = 0; i < d; ++i) out[i] = marginal_effect(js.dims, k, Vector::Unit(d, i)).dot(js.joint);
  return out;
}

/**
 * True iff every joint outcome probability of the product measurement equals
 * the product of the factor marginals within tol.
 */
inline bool factorisation_check(const JointState &js, const std::vector<Measurement> &ms,
                                double tol = 10 * kDefaultTolerance) {
  if (ms.size() != js.dims.size())
    throw InvalidArgument("factorisation_check: " + std::to_string(ms.size()) +
                          " measurements for " + std::to_string(js.dims.size()) + " factors");
  if (js.joint.size() != js.total_dim())
    throw DimensionMismatch(js.total_dim(), js.joint.size(), "factorisation_check joint vector");
  for (std::size_t k = 0; k < ms.size(); ++k)
    if (ms[k].dim() != js.dims[k]) throw DimensionMismatch(js.dims[k], ms[k].dim(), "factorisation_check measurement");

  std::vector<std::vector<double>> marginals(ms.size());
  for (std::size_t k = 0; k < ms.size(); ++k)
    for (const auto &e : ms[k].effects())
      marginals[k].push_back(marginal_effect(js.dims, k, e.vector()).dot(js.joint));

  // Odometer over all outcome combinations.
  std::vector<std::size_t> idx(ms.size(), 0);
  for (;;) {
    Vector eff = Vector::Ones(1);
    double prod = 1.0;
    for (std::size_t k = 0; k < ms.size(); ++k) {
      eff = kron(eff, ms[k].effects()[idx[k]].vector());
      prod *= marginals[k][idx[k]];
    }
    if (std::abs(eff.dot(js.joint) - prod) > tol) return false;
    std::size_t k = ms.size();
    while (k > 0) {
      --k;
      if (++idx[k] < ms[k].size()) break;
      idx[k] = 0;
      if (k == 0) return true;
    }
    if (ms.empty()) return true;
  }
}

/**
 * Minimal tensor product of polytopes: the convex hull of all Kronecker
 * products of vertices.
 */
inline StateSpace min_tensor_product(const StateSpace &a, const StateSpace &b,
                                     double eps = kDefaultTolerance) {
  const auto *pa = a.as_polytope();
  const auto *pb = b.as_polytope();
  if (!pa || !pb) throw InvalidArgument("min_tensor_product: both factors must be polytopes");
  std::vector<State> verts;
  for (const auto &va : pa->vertices)
    for (const auto &vb : pb->vertices) verts.emplace_back(kron(va.vector(), vb.vector()));
  return StateSpace::polytope(std::move(verts), eps);
}

}  // namespace gptlab
