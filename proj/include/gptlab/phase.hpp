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
 * @file phase.hpp
 * Phase groups of measurements and the particle types they induce.
 *
 * The phase group of a measurement is the largest subgroup of the theory's
 * reversible transformations that leaves every outcome probability of that
 * measurement unchanged on every state. By linearity it suffices to check the
 * probe points of the state space (vertices, or the extreme-point probe set
 * of a ball product).
 *
 * Each phase-group element is a particle type: the identity is the boson,
 * the other self-inverse elements are fermions and everything else is an
 * anyon. Under the simple topology (swapping twice is unobservable) only the
 * involutions survive.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gptlab/groups.hpp"
#include "gptlab/theory.hpp"

namespace gptlab {

/// A probe point and effect on which an element changes a probability.
struct PreservationViolation {
  std::size_t point_index = 0;
  Vector point;
  std::size_t effect_index = 0;
  double deviation = 0.0;
};

inline std::optional<PreservationViolation> preservation_violation(
    const Matrix &t, const Measurement &m, const std::vector<Vector> &points,
    double eps = kDefaultTolerance) {
  for (std::size_t p = 0; p < points.size(); ++p) {
    const Vector moved = t * points[p];
    for (std::size_t i = 0; i < m.size(); ++i) {
      const Vector &e = m.effects()[i].vector();
      const double dev = std::abs(e.dot(moved) - e.dot(points[p]));
      if (dev > eps) return PreservationViolation{p, points[p], i, dev};
    }
  }
  return std::nullopt;
}

struct PhaseExclusion {
  std::size_t parent_index = 0;
  std::string label;
  PreservationViolation witness;
};

struct PhaseGroup {
  std::string theory_name;
  Measurement measurement;
  TransformationGroup elements;
  /// Indices into the parent group, aligned with elements.
  std::vector<std::size_t> parent_indices;
  std::vector<PhaseExclusion> excluded;
  std::vector<Vector> probe_points;

  std::size_t order() const { return elements.order(); }
};

/// Filters the theory's group down to the elements preserving `m`.
inline PhaseGroup compute_phase_group(const Theory &theory, const Measurement &m,
                                      double eps = kDefaultTolerance, int samples = 200,
                                      std::uint64_t seed = 0) {
  if (!theory.group().closed())
    throw InvalidArgument("compute_phase_group: parent group of '" + theory.name() + "' is not closed");
  if (m.dim() != theory.dim())
    throw DimensionMismatch(theory.dim(), m.dim(), "compute_phase_group measurement");
  auto points = probe_points(theory.space(), samples, seed);
  std::vector<Transformation> kept;
  std::vector<std::size_t> kept_idx;
  std::vector<PhaseExclusion> excluded;
  const auto &g = theory.group();
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (auto v = preservation_violation(g[i].matrix(), m, points, eps)) {
      excluded.push_back({i, g[i].label(), std::move(*v)});
    } else {
      kept.push_back(g[i]);
      kept_idx.push_back(i);
    }
  }
  auto sub = TransformationGroup::from_elements(kept, true, g.tolerance());
  if (!sub.closed())
    throw NumericError("compute_phase_group: stabiliser of '" + m.name() + "' is not closed", 0.0);
  // from_elements keeps first-seen order and kept[0] is the identity, so
  // indices stay aligned.
  return PhaseGroup{theory.name(), m, std::move(sub), std::move(kept_idx),
                    std::move(excluded), std::move(points)};
}

inline PhaseGroup compute_phase_group(const Theory &theory, const std::string &measurement,
                                      double eps = kDefaultTolerance) {
  return compute_phase_group(theory, theory.measurement(measurement), eps);
}

enum class ParticleKind { Boson, Fermion, Anyon };
enum class Topology { Simple, Unrestricted };

inline const char *to_string(ParticleKind k) {
  switch (k) {
    case ParticleKind::Boson: return "boson";
    case ParticleKind::Fermion: return "fermion";
    case ParticleKind::Anyon: return "anyon";
  }
  return "?";
}

inline const char *to_string(Topology t) {
  return t == Topology::Simple ? "simple" : "unrestricted";
}

inline ParticleKind particle_kind(const Transformation &t, double eps = kDefaultTolerance) {
  if (t.is_identity(eps)) return ParticleKind::Boson;
  const Matrix sq = t.matrix() * t.matrix();
  if (max_abs(sq - Matrix::Identity(t.dim(), t.dim())) <= eps) return ParticleKind::Fermion;
  return ParticleKind::Anyon;
}

struct ParticleType {
  Transformation element;
  ParticleKind kind;
  std::string label;
};

struct ParticleCatalog {
  std::string theory_name;
  std::string measurement_name;
  Topology topology = Topology::Simple;
  std::vector<ParticleType> particles;
  std::size_t phase_group_order = 0;
  bool phase_group_abelian = true;
  std::size_t involution_count = 0;
  bool fermion_sector_abelian = true;
  std::optional<std::pair<ParticleType, ParticleType>> witness_pair;
  double witness_commutator = 0.0;
  /// Order of the subgroup generated by the involutions, and whether the
  /// involution set is itself a group.
  std::size_t involution_generated_order = 0;
  bool involutions_form_subgroup = true;

  std::size_t count(ParticleKind k) const {
    std::size_t n = 0;
    for (const auto &p : particles) n += p.kind == k;
    return n;
  }

  const ParticleType *find(const std::string &label) const {
    for (const auto &p : particles)
      if (p.label == label) return &p;
    return nullptr;
  }
};

inline ParticleCatalog classify(const PhaseGroup &pg, Topology topology,
                                double eps = kDefaultTolerance,
                                std::size_t cap = kDefaultClosureCap) {
  ParticleCatalog cat;
  cat.theory_name = pg.theory_name;
  cat.measurement_name = pg.measurement.name();
  cat.topology = topology;
  cat.phase_group_order = pg.order();
  cat.phase_group_abelian = is_abelian(pg.elements.elements(), eps).abelian;

  const auto invs = involutions(pg.elements, eps);
  cat.involution_count = invs.size();
  for (const auto &t : pg.elements.elements()) {
    const ParticleKind k = particle_kind(t, eps);
    if (topology == Topology::Simple && k == ParticleKind::Anyon) continue;
    cat.particles.push_back({t, k, t.label()});
  }

  const AbelianCheck ab = is_abelian(invs, eps);
  cat.fermion_sector_abelian = ab.abelian;
  if (ab.witness) {
    const auto &a = invs[ab.witness->first];
    const auto &b = invs[ab.witness->second];
    cat.witness_pair.emplace(ParticleType{a, particle_kind(a, eps), a.label()},
                             ParticleType{b, particle_kind(b, eps), b.label()});
    cat.witness_commutator = ab.witness_distance;
  }
  const auto generated = closure(invs, cap, eps);
  cat.involution_generated_order = generated.order();
  cat.involutions_form_subgroup = generated.order() == invs.size();
  return cat;
}

/// One row of a phase-group survey.
struct SurveyRow {
  std::string theory;
  std::string measurement;
  bool designated = false;
  std::size_t group_order = 0;
  std::size_t phase_group_order = 0;
  bool phase_group_abelian = true;
  std::size_t simple_bosons = 0, simple_fermions = 0, simple_anyons = 0;
  std::size_t unrestricted_bosons = 0, unrestricted_fermions = 0, unrestricted_anyons = 0;
  bool fermion_sector_abelian = true;
  std::size_t involution_generated_order = 0;

  std::size_t simple_count() const { return simple_bosons + simple_fermions + simple_anyons; }
  std::size_t unrestricted_count() const {
    return unrestricted_bosons + unrestricted_fermions + unrestricted_anyons;
  }
};

/// One row per (theory, binary measurement).
inline std::vector<SurveyRow> survey(const std::vector<Theory> &theories,
                                     double eps = kDefaultTolerance) {
  std::vector<SurveyRow> rows;
  for (const auto &t : theories) {
    for (const auto &m : t.measurements()) {
      if (!m.is_binary()) continue;
      const PhaseGroup pg = compute_phase_group(t, m, eps);
      const ParticleCatalog simple = classify(pg, Topology::Simple, eps);
      const ParticleCatalog unres = classify(pg, Topology::Unrestricted, eps);
      SurveyRow r;
      r.theory = t.name();
      r.measurement = m.name();
      r.designated = m.name() == t.designated_measurement_name();
      r.group_order = t.group().order();
      r.phase_group_order = pg.order();
      r.phase_group_abelian = simple.phase_group_abelian;
      r.simple_bosons = simple.count(ParticleKind::Boson);
      r.simple_fermions = simple.count(ParticleKind::Fermion);
      r.simple_anyons = simple.count(ParticleKind::Anyon);
      r.unrestricted_bosons = unres.count(ParticleKind::Boson);
      r.unrestricted_fermions = unres.count(ParticleKind::Fermion);
      r.unrestricted_anyons = unres.count(ParticleKind::Anyon);
      r.fermion_sector_abelian = simple.fermion_sector_abelian;
      r.involution_generated_order = simple.involution_generated_order;
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

}  // namespace gptlab
