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

#pragma once

#include <string>
#include <vector>

#include "gptlab/core.hpp"
#include "gptlab/groups.hpp"

namespace gptlab {

/// One named invariant check and its outcome.
struct Diagnostic {
  std::string invariant;
  bool ok = true;
  std::string detail;
};

using Diagnostics = std::vector<Diagnostic>;

inline bool all_ok(const Diagnostics &ds) {
  for (const auto &d : ds)
    if (!d.ok) return false;
  return true;
}

/**
 * A state space, its measurements and its group of allowed reversible
 * transformations.
 *
 * The constructor only checks structure (dimensions, names, a non-empty
 * measurement list). Use validate() for the full invariant set, or
 * make_theory() to construct and validate in one step.
 */
class Theory {
 public:
  Theory(std::string name, StateSpace space, std::vector<Measurement> measurements,
         TransformationGroup group, std::string designated_measurement,
         std::vector<Transformation> generators = {}, bool continuous_symmetry = false)
      : name_(std::move(name)),
        space_(std::move(space)),
        measurements_(std::move(measurements)),
        group_(std::move(group)),
        generators_(std::move(generators)),
        designated_(std::move(designated_measurement)),
        continuous_symmetry_(continuous_symmetry) {
    if (measurements_.empty())
      throw InvariantError("theory.measurements_non_empty", "theory '" + name_ + "' has no measurements");
    for (const auto &m : measurements_)
      if (m.dim() != space_.dim())
        throw DimensionMismatch(space_.dim(), m.dim(), "measurement '" + m.name() + "'");
    for (std::size_t i = 0; i < measurements_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (measurements_[i].name() == measurements_[j].name())
          throw InvalidArgument("duplicate measurement name '" + measurements_[i].name() + "'");
    if (group_.dim() != space_.dim())
      throw DimensionMismatch(space_.dim(), group_.dim(), "theory group");
    if (!find_measurement(designated_))
      throw InvalidArgument("designated measurement '" + designated_ + "' not found");
  }

  const std::string &name() const { return name_; }
  const StateSpace &space() const { return space_; }
  Index dim() const { return space_.dim(); }
  const std::vector<Measurement> &measurements() const { return measurements_; }
  const TransformationGroup &group() const { return group_; }
  /// Generators the group was closed from (empty if built from elements).
  const std::vector<Transformation> &generators() const { return generators_; }
  const std::string &designated_measurement_name() const { return designated_; }
  const Measurement &designated_measurement() const { return *find_measurement(designated_); }

  /// True when the enumerated group is a finite subgroup of a continuous
  /// symmetry group; allowed elements outside it are then legitimate.
  bool continuous_symmetry() const { return continuous_symmetry_; }

  const Measurement *find_measurement(const std::string &n) const {
    for (const auto &m : measurements_)
      if (m.name() == n) return &m;
    return nullptr;
  }

  const Measurement &measurement(const std::string &n) const {
    if (const auto *m = find_measurement(n)) return *m;
    throw InvalidArgument("theory '" + name_ + "' has no measurement named '" + n + "'");
  }

 private:
  std::string name_;
  StateSpace space_;
  std::vector<Measurement> measurements_;
  TransformationGroup group_;
  std::vector<Transformation> generators_;
  std::string designated_;
  bool continuous_symmetry_ = false;
};

/// Re-runs every theory invariant and reports each one.
inline Diagnostics validate(const Theory &t, double eps = kDefaultTolerance) {
  Diagnostics out;
  const auto &space = t.space();

  for (const auto &m : t.measurements()) {
    Vector sum = Vector::Zero(t.dim());
    for (const auto &e : m.effects()) sum += e.vector();
    const double gap = max_abs(sum - unit_effect(t.dim()).vector());
    out.push_back({"measurement.sums_to_unit[" + m.name() + "]", gap <= eps,
                   gap <= eps ? "" : "max deviation " + std::to_string(gap)});
    std::string bad;
    for (std::size_t i = 0; i < m.size() && bad.empty(); ++i) {
      if (auto w = effect_violation(m.effects()[i], space, eps)) {
        bad = "effect " + std::to_string(i) + " leaves [0,1] on " + format_vector(*w);
      }
    }
    out.push_back({"measurement.valid_effects[" + m.name() + "]", bad.empty(), bad});
  }

  const auto &g = t.group();
  out.push_back({"group.contains_identity", g.order() > 0 && g[0].is_identity(eps), ""});
  {
    const bool closed = g.closed();
    out.push_back({"group.closed", closed, closed ? "" : "group is not closed under product/inverse"});
  }
  std::string not_allowed, not_reversible;
  for (const auto &el : g.elements()) {
    if (not_allowed.empty() && !is_allowed(el, space, eps)) not_allowed = el.label();
    if (not_reversible.empty() && !is_reversible(el, space, eps)) not_reversible = el.label();
  }
  out.push_back({"group.elements_allowed", not_allowed.empty(),
                 not_allowed.empty() ? "" : "element '" + not_allowed + "' maps a state outside the space"});
  out.push_back({"group.elements_reversible", not_reversible.empty(),
                 not_reversible.empty() ? "" : "element '" + not_reversible + "' has no allowed inverse"});

  const auto &dm = t.designated_measurement();
  out.push_back({"theory.designated_measurement_binary", dm.is_binary(),
                 dm.is_binary() ? "" : "'" + dm.name() + "' has " + std::to_string(dm.size()) + " effects"});
  return out;
}

/// Constructs and validates; throws InvariantError naming the first failure.
inline Theory make_theory(std::string name, StateSpace space, std::vector<Measurement> measurements,
                          TransformationGroup group, std::string designated,
                          std::vector<Transformation> generators = {},
                          bool continuous_symmetry = false, double eps = kDefaultTolerance) {
  Theory t(std::move(name), std::move(space), std::move(measurements), std::move(group),
           std::move(designated), std::move(generators), continuous_symmetry);
  for (const auto &d : validate(t, eps))
    if (!d.ok) throw InvariantError(d.invariant, d.detail);
  return t;
}

}  // namespace gptlab
