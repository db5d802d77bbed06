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
 * @file experiments.hpp
 * The controlled-swap protocol on product inputs pair ⊗ control.
 *
 * For indistinguishable particles the swap leaves the pair state invariant
 * and, on product inputs, acts as 1_pair ⊗ T_control where T_control is an
 * element of the phase group of the branch measurement. The simulator works
 * directly with that effective dynamics; non-product inputs are not
 * simulated.
 */

#pragma once

#include <array>
#include <string>
#include <vector>

#include "gptlab/composite.hpp"
#include "gptlab/phase.hpp"
#include "gptlab/theory.hpp"

namespace gptlab {

/// A requested particle whose exchange action is not physical in the theory.
class UnphysicalParticle : public Error {
 public:
  using Error::Error;
};

/// The element would change branch statistics, i.e. allow signalling.
class SignallingParticle : public UnphysicalParticle {
 public:
  SignallingParticle(const std::string &label, const std::string &measurement,
                     PreservationViolation w)
      : UnphysicalParticle("signalling particle '" + label + "': changes the statistics of '" +
                           measurement + "' effect " + std::to_string(w.effect_index) + " on " +
                           format_vector(w.point) + " by " + std::to_string(w.deviation)),
        witness_(std::move(w)) {}
  const PreservationViolation &witness() const { return witness_; }

 private:
  PreservationViolation witness_;
};

/**
 * Throws unless `element` is an allowed reversible transformation of the
 * theory (a group member, or any allowed reversible map when the theory's
 * group is a finite subgroup of a continuous symmetry) that preserves every
 * outcome probability of `m`.
 */
inline void verify_phase_member(const Theory &theory, const Measurement &m,
                                const Transformation &element, double eps = kDefaultTolerance) {
  if (element.dim() != theory.dim())
    throw DimensionMismatch(theory.dim(), element.dim(), "particle element '" + element.label() + "'");
  if (theory.continuous_symmetry()) {
    if (!is_reversible(element, theory.space(), eps))
      throw UnphysicalParticle("particle '" + element.label() +
                               "' is not an allowed reversible transformation of '" + theory.name() + "'");
  } else if (!theory.group().contains(element.matrix())) {
    throw UnphysicalParticle("particle '" + element.label() + "' is not in the group of '" +
                             theory.name() + "'");
  }
  const auto points = probe_points(theory.space());
  if (auto v = preservation_violation(element.matrix(), m, points, eps))
    throw SignallingParticle(element.label(), m.name(), std::move(*v));
}

struct SwapExperimentConfig {
  std::string branch_measurement;
  ParticleType particle;
  State control_state;
  /// State of the swapped pair in its own theory; only normalisation is checked.
  State pair_state;
};

struct SwapExperimentResult {
  State control_in;
  State control_out;
  State pair_in;
  State pair_out;
  Vector joint_in;
  Vector joint_out;
  std::array<double, 2> branch_in{};
  std::array<double, 2> branch_out{};
  bool indistinguishability_ok = false;
  bool no_signalling_ok = false;
  /// joint_out == pair_in ⊗ control_out within eps.
  bool kickback_ok = false;
};

inline SwapExperimentResult run_controlled_swap(const Theory &theory, const SwapExperimentConfig &cfg,
                                                double eps = kDefaultTolerance) {
  const Measurement &m = theory.measurement(cfg.branch_measurement);
  if (!m.is_binary())
    throw InvalidArgument("branch measurement '" + m.name() + "' must have exactly 2 effects");
  if (cfg.control_state.dim() != theory.dim())
    throw DimensionMismatch(theory.dim(), cfg.control_state.dim(), "control state");
  if (!cfg.control_state.is_normalised(eps) || !is_member(cfg.control_state, theory.space(), eps))
    throw InvalidArgument("control state " + format_vector(cfg.control_state.vector()) +
                          " is not a normalised member of '" + theory.name() + "'");
  if (!cfg.pair_state.is_normalised(eps))
    throw InvalidArgument("pair state " + format_vector(cfg.pair_state.vector()) + " is not normalised");
  const Transformation &t = cfg.particle.element;
  verify_phase_member(theory, m, t, eps);

  const Index pd = cfg.pair_state.dim();
  const Vector joint_in = kron(cfg.pair_state.vector(), cfg.control_state.vector());
  const Matrix effective = kron(Matrix(Matrix::Identity(pd, pd)), t.matrix());
  Vector joint_out = effective * joint_in;

  State control_out = apply(t, cfg.control_state);
  State pair_out(reduce(JointState{{pd, theory.dim()}, joint_out}, 0));

  SwapExperimentResult r{cfg.control_state, control_out, cfg.pair_state, pair_out,
                         joint_in, joint_out};
  for (std::size_t i = 0; i < 2; ++i) {
    r.branch_in[i] = probability(m.effects()[i], cfg.control_state, eps);
    r.branch_out[i] = probability(m.effects()[i], control_out, eps);
  }
  r.indistinguishability_ok = r.pair_out.vector() == r.pair_in.vector();
  r.no_signalling_ok = std::abs(r.branch_in[0] - r.branch_out[0]) <= eps &&
                       std::abs(r.branch_in[1] - r.branch_out[1]) <= eps;
  r.kickback_ok = max_abs(joint_out - kron(cfg.pair_state.vector(), control_out.vector())) <= eps;
  return r;
}

struct OrderTestResult {
  State final_ab_first;  // pA swapped first: pB·pA·control
  State final_ba_first;  // pB swapped first: pA·pB·control
  double distinguishability = 0.0;
  std::string best_measurement;
  std::size_t best_effect = 0;
};

/// Controlled swaps of two particle pairs in both orders, conditioned on the
/// same control system.
inline OrderTestResult run_order_test(const Theory &theory, const std::string &branch_measurement,
                                      const ParticleType &pa, const ParticleType &pb,
                                      const State &control, double eps = kDefaultTolerance) {
  const Measurement &m = theory.measurement(branch_measurement);
  if (!m.is_binary())
    throw InvalidArgument("branch measurement '" + m.name() + "' must have exactly 2 effects");
  if (!control.is_normalised(eps) || !is_member(control, theory.space(), eps))
    throw InvalidArgument("control state " + format_vector(control.vector()) +
                          " is not a normalised member of '" + theory.name() + "'");
  verify_phase_member(theory, m, pa.element, eps);
  verify_phase_member(theory, m, pb.element, eps);

  OrderTestResult r{apply(pb.element, apply(pa.element, control)),
                    apply(pa.element, apply(pb.element, control)), 0.0,
                    theory.measurements().front().name(), 0};
  for (const auto &meas : theory.measurements()) {
    for (std::size_t i = 0; i < meas.size(); ++i) {
      const Vector &e = meas.effects()[i].vector();
      const double gap = std::abs(e.dot(r.final_ab_first.vector()) - e.dot(r.final_ba_first.vector()));
      if (gap > r.distinguishability) {
        r.distinguishability = gap;
        r.best_measurement = meas.name();
        r.best_effect = i;
      }
    }
  }
  r.distinguishability = std::min(r.distinguishability, 1.0);
  return r;
}

struct UncontrolledResult {
  Vector joint_first_then_second;
  Vector joint_second_then_first;
  bool identical = false;
};

/**
 * Swaps two disjoint pairs without a control, in both orders. Each swap
 * leaves its own pair's state invariant, so both orders end in the same
 * joint state pair1 ⊗ pair2.
 */
inline UncontrolledResult uncontrolled_commutation_check(const ParticleType &pa, const ParticleType &pb,
                                                         const State &pair1, const State &pair2) {
  (void)pa;
  (void)pb;
  const Index d1 = pair1.dim(), d2 = pair2.dim();
  // Without a control branch the swap's only action is on its own pair,
  // where it is the identity on the (invariant) pair state.
  const Matrix swap1 = kron(Matrix(Matrix::Identity(d1, d1)), Matrix(Matrix::Identity(d2, d2)));
  const Matrix swap2 = swap1;
  const Vector in = kron(pair1.vector(), pair2.vector());
  UncontrolledResult r;
  r.joint_first_then_second = swap2 * (swap1 * in);
  r.joint_second_then_first = swap1 * (swap2 * in);
  r.identical = r.joint_first_then_second == r.joint_second_then_first;
  return r;
}

/// Looks up a particle by element label or "#k" (index into `group`).
inline ParticleType find_particle(const TransformationGroup &group, const std::string &label,
                                  double eps = kDefaultTolerance) {
  if (!label.empty() && label[0] == '#') {
    std::size_t k = 0;
    try {
      k = std::stoul(label.substr(1));
    } catch (const std::exception &) {
      throw InvalidArgument("bad particle index '" + label + "'");
    }
    if (k >= group.order())
      throw InvalidArgument("particle index " + label + " out of range (group order " +
                            std::to_string(group.order()) + ")");
    const auto &t = group[k];
    return {t, particle_kind(t, eps), t.label()};
  }
  for (const auto &t : group.elements())
    if (t.label() == label) return {t, particle_kind(t, eps), t.label()};
  throw InvalidArgument("no group element labelled '" + label + "'");
}

}  // namespace gptlab
