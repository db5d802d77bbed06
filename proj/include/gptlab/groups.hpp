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
 * @file groups.hpp
 * Finite matrix groups: breadth-first closure from generators, involutions,
 * commutation tests.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gptlab/core.hpp"

namespace gptlab {

inline constexpr std::size_t kDefaultClosureCap = 20000;

class GroupTooLarge : public Error {
 public:
  GroupTooLarge(std::size_t cap, std::size_t partial)
      : Error("group too large or not finite: closure exceeded cap " + std::to_string(cap) +
              " after " + std::to_string(partial) + " elements"),
        partial_(partial) {}
  std::size_t partial_count() const { return partial_; }

 private:
  std::size_t partial_;
};

namespace detail {

/// Matrix entries rounded to 12 decimals; equal keys are confirmed with an
/// eps comparison.
using MatrixKey = std::vector<std::int64_t>;

inline MatrixKey matrix_key(const Matrix &m) {
  MatrixKey k;
  k.reserve(static_cast<std::size_t>(m.size()) + 1);
  k.push_back(m.rows());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) k.push_back(std::llround(m(i, j) * 1e12));
  return k;
}

struct MatrixKeyHash {
  std::size_t operator()(const MatrixKey &k) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : k) {
      h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace detail

/**
 * A finite set of transformations closed under product. The identity is
 * always element 0.
 */
class TransformationGroup {
 public:
  /// Wraps an explicit element list; deduplicates and puts the identity first.
  /// Closure is verified when `verify` is set, and `closed()` reports it.
  static TransformationGroup from_elements(std::vector<Transformation> elements,
                                           bool verify = true,
                                           double eps = kDefaultTolerance) {
    if (elements.empty()) throw InvalidArgument("TransformationGroup: no elements");
    TransformationGroup g(elements.front().dim(), eps);
    for (auto &t : elements) g.insert(std::move(t));
    g.closed_ = verify ? g.verify_closed() : false;
    return g;
  }

  std::size_t order() const { return elements_.size(); }
  Index dim() const { return dim_; }
  const std::vector<Transformation> &elements() const { return elements_; }
  const Transformation &operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<std::size_t> &generator_indices() const { return generators_; }
  bool closed() const { return closed_; }
  double tolerance() const { return eps_; }

  std::optional<std::size_t> find(const Matrix &m) const {
    if (m.rows() != dim_ || m.cols() != dim_) return std::nullopt;
    auto it = index_.find(detail::matrix_key(m));
    if (it != index_.end()) {
      for (std::size_t i : it->second)
        if (max_abs(elements_[i].matrix() - m) <= eps_) return i;
    }
    return std::nullopt;
  }

  bool contains(const Matrix &m) const { return find(m).has_value(); }

  std::optional<std::size_t> inverse_index(std::size_t i) const {
    const auto inv = checked_inverse(elements_[i].matrix());
    if (!inv) return std::nullopt;
    return find(*inv);
  }

  /// Every product and every inverse is found in the element list.
  bool verify_closed() const {
    if (elements_.empty() || !elements_.front().is_identity(eps_)) return false;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (!inverse_index(i)) return false;
      for (std::size_t j = 0; j < elements_.size(); ++j)
        if (!find(elements_[i].matrix() * elements_[j].matrix())) return false;
    }
    return true;
  }

 private:
  friend TransformationGroup closure(std::span<const Transformation>, std::size_t, double);

  TransformationGroup(Index dim, double eps) : dim_(dim), eps_(eps) {
    insert(Transformation::identity(dim));
  }

  /// Returns the index of the (possibly pre-existing) element.
  std::pair<std::size_t, bool> insert(Transformation t) {
    if (t.dim() != dim_) throw DimensionMismatch(dim_, t.dim(), "TransformationGroup");
    if (auto i = find(t.matrix())) return {*i, false};
    const std::size_t idx = elements_.size();
    index_[detail::matrix_key(t.matrix())].push_back(idx);
    elements_.push_back(std::move(t));
    return {idx, true};
  }

  Index dim_;
  double eps_;
  std::vector<Transformation> elements_;
  std::vector<std::size_t> generators_;
  std::unordered_map<detail::MatrixKey, std::vector<std::size_t>, detail::MatrixKeyHash> index_;
  bool closed_ = false;
};

/**
 * Breadth-first closure of the generators under left multiplication.
 *
 * New elements are labelled "g·w" where g is the generator label and w the
 * label of the element it multiplied. Throws GroupTooLarge once more than
 * `cap` elements are found.
 */
inline TransformationGroup closure(std::span<const Transformation> generators,
                                   std::size_t cap = kDefaultClosureCap,
                                   double eps = kDefaultTolerance) {
  if (generators.empty()) throw InvalidArgument("closure: no generators");
  const Index dim = generators.front().dim();
  for (const auto &g : generators) {
    if (g.dim() != dim) throw DimensionMismatch(dim, g.dim(), "closure generator '" + g.label() + "'");
    if (!checked_inverse(g.matrix()))
      throw InvalidArgument("closure: generator '" + g.label() + "' is not invertible");
  }
  TransformationGroup group(dim, eps);
  for (const auto &g : generators) {
    auto [idx, fresh] = group.insert(g);
    (void)fresh;
    if (std::find(group.generators_.begin(), group.generators_.end(), idx) == group.generators_.end())
      group.generators_.push_back(idx);
  }
  if (group.order() > cap) throw GroupTooLarge(cap, group.order());

  std::deque<std::size_t> frontier;
  for (std::size_t i = 0; i < group.order(); ++i) frontier.push_back(i);
  while (!frontier.empty()) {
    const std::size_t cur = frontier.front();
    frontier.pop_front();
    for (const auto &g : generators) {
      const Transformation &w = group.elements_[cur];
      Matrix prod = g.matrix() * w.matrix();
      if (group.find(prod)) continue;
      std::string label = w.is_identity(eps) ? g.label() : g.label() + "·" + w.label();
      auto [idx, fresh] = group.insert(Transformation(std::move(prod), std::move(label)));
      if (fresh) {
        if (group.order() > cap) throw GroupTooLarge(cap, group.order());
        frontier.push_back(idx);
      }
    }
  }
  // BFS already guarantees g·x is present for every generator g, hence
  // closure under products; only inverses remain to be confirmed.
  group.closed_ = true;
  for (std::size_t i = 0; i < group.order() && group.closed_; ++i)
    group.closed_ = group.inverse_index(i).has_value();
  return group;
}

inline TransformationGroup closure(const std::vector<Transformation> &generators,
                                   std::size_t cap = kDefaultClosureCap,
                                   double eps = kDefaultTolerance) {
  return closure(std::span<const Transformation>(generators), cap, eps);
}

/// Elements with T·T = identity, identity included, in group order.
inline std::vector<Transformation> involutions(const TransformationGroup &g,
                                               double eps = kDefaultTolerance) {
  std::vector<Transformation> out;
  const Matrix id = Matrix::Identity(g.dim(), g.dim());
  for (const auto &t : g.elements())
    if (max_abs(t.matrix() * t.matrix() - id) <= eps) out.push_back(t);
  return out;
}

/// Max-abs-entry norm of AB - BA.
inline double commutator_distance(const Transformation &a, const Transformation &b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim(), "commutator_distance");
  return max_abs(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

struct AbelianCheck {
  bool abelian = true;
  /// Indices (i < j) of the first non-commuting pair in scan order.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  double witness_distance = 0.0;

  explicit operator bool() const { return abelian; }
};

inline AbelianCheck is_abelian(std::span<const Transformation> set,
                               double eps = kDefaultTolerance) {
  AbelianCheck out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      const double d = commutator_distance(set[i], set[j]);
      if (d > eps) {
        out.abelian = false;
        out.witness = {i, j};
        out.witness_distance = d;
        return out;
      }
    }
  }
  return out;
}

inline AbelianCheck is_abelian(const std::vector<Transformation> &set,
                               double eps = kDefaultTolerance) {
  return is_abelian(std::span<const Transformation>(set), eps);
}

}  // namespace gptlab
