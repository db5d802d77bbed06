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


#include <random>

#include <gtest/gtest.h>

#include "gptlab/phase.hpp"
#include "gptlab/theories.hpp"
#include "oracles.hpp"

namespace {

using namespace gptlab;

PhaseGroup designated(const Theory &t) { return compute_phase_group(t, t.designated_measurement()); }

TEST(PhaseGroup, ClassicalBitIsTrivial) {
  const auto pg = designated(classical_bit());
  EXPECT_EQ(pg.order(), 1u);
  ASSERT_EQ(pg.excluded.size(), 1u);
  EXPECT_EQ(pg.excluded[0].label, "flip");
}

TEST(PhaseGroup, GbitXKeepsIdentityAndZReflection) {
  const Theory t = gbit_square();
  const auto pg = compute_phase_group(t, "X");
  ASSERT_EQ(pg.order(), 2u);
  EXPECT_TRUE(pg.elements.contains(make_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}})));
}

TEST(PhaseGroup, GbitXAgreesWithExhaustiveFilter) {
  // Oracle: filter the explicit symmetries against both X effects on (x, z) = (+-1, +-1).
  int kept = 0;
  for (const auto &b : oracle::square_symmetries()) {
    bool ok = true;
    for (double x : {1.0, -1.0})
      for (double z : {1.0, -1.0}) {
        const Eigen::Vector2d img = b * Eigen::Vector2d(x, z);
        ok = ok && std::abs(img[0] - x) < 1e-12;
      }
    kept += ok;
  }
  EXPECT_EQ(kept, 2);
}

TEST(PhaseGroup, Ball3WPreservedByAllOfB3) { EXPECT_EQ(designated(ball3_w()).order(), 48u); }

TEST(PhaseGroup, QubitZIsCyclicOfOrderFour) {
  const auto pg = designated(qubit_bloch());
  ASSERT_EQ(pg.order(), 4u);
  for (int k = 0; k < 4; ++k)
    EXPECT_TRUE(pg.elements.contains(bloch_rz(k * std::numbers::pi / 2, "r").matrix())) << k;
}

TEST(PhaseGroup, PolygonThreeAndFiveKeepReflectionThroughZAxis) {
  for (int n : {3, 5}) {
    const auto pg = designated(polygon(n));
    ASSERT_EQ(pg.order(), 2u) << n;
    EXPECT_TRUE(pg.elements.contains(make_matrix({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}})));
  }
}

TEST(PhaseGroup, IsClosedSubgroup) {
  for (const auto &name : builtin_names()) {
    const Theory t = *builtin(name);
    for (const auto &m : t.measurements()) {
      const auto pg = compute_phase_group(t, m);
      EXPECT_TRUE(pg.elements.verify_closed()) << name << "/" << m.name();
      for (std::size_t i = 0; i < pg.order(); ++i)
        EXPECT_LT(max_abs(t.group()[pg.parent_indices[i]].matrix() - pg.elements[i].matrix()), 1e-15);
    }
  }
}

TEST(PhaseGroup, ExcludedWitnessesReproduceDeviation) {
  for (const auto &name : builtin_names()) {
    const Theory t = *builtin(name);
    for (const auto &m : t.measurements()) {
      const auto pg = compute_phase_group(t, m);
      EXPECT_EQ(pg.order() + pg.excluded.size(), t.group().order());
      for (const auto &ex : pg.excluded) {
        const Matrix &T = t.group()[ex.parent_index].matrix();
        const Vector &e = m.effects()[ex.witness.effect_index].vector();
        const double dev = std::abs(e.dot(T * ex.witness.point) - e.dot(ex.witness.point));
        EXPECT_GT(dev, kDefaultTolerance) << name << " " << ex.label;
        EXPECT_NEAR(dev, ex.witness.deviation, 1e-15);
      }
    }
  }
}

TEST(PhaseGroup, PreservationExtendsToRandomMixtures) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto &name : builtin_names()) {
    const Theory t = *builtin(name);
    const auto pg = designated(t);
    const auto pts = probe_points(t.space());
    for (int k = 0; k < 100; ++k) {
      Vector s = Vector::Zero(t.dim());
      double total = 0;
      for (const auto &p : pts) {
        const double w = u(rng);
        s += w * p;
        total += w;
      }
      s /= total;
      for (const auto &g : pg.elements.elements())
        for (const auto &e : t.designated_measurement().effects())
          EXPECT_NEAR(e.vector().dot(g.matrix() * s), e.vector().dot(s), 10 * kDefaultTolerance);
    }
  }
}

TEST(PhaseGroup, UnknownMeasurementThrows) {
  EXPECT_THROW(compute_phase_group(gbit_square(), "Y"), InvalidArgument);
}

TEST(Kind, BosonFermionAnyon) {
  EXPECT_EQ(particle_kind(Transformation::identity(4)), ParticleKind::Boson);
  EXPECT_EQ(particle_kind(bloch_rz(std::numbers::pi, "f")), ParticleKind::Fermion);
  EXPECT_EQ(particle_kind(bloch_rz(std::numbers::pi / 2, "a")), ParticleKind::Anyon);
}

TEST(Classify, ClassicalHasOnlyBoson) {
  const auto cat = classify(designated(classical_bit()), Topology::Simple);
  ASSERT_EQ(cat.particles.size(), 1u);
  EXPECT_EQ(cat.particles[0].kind, ParticleKind::Boson);
}

TEST(Classify, QubitSimpleIsBosonAndOneFermion) {
  const auto cat = classify(designated(qubit_bloch()), Topology::Simple);
  ASSERT_EQ(cat.particles.size(), 2u);
  EXPECT_EQ(cat.count(ParticleKind::Boson), 1u);
  EXPECT_EQ(cat.count(ParticleKind::Fermion), 1u);
  const auto *f = cat.find("rz180");
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->kind, ParticleKind::Fermion);
  EXPECT_TRUE(cat.fermion_sector_abelian);
}

TEST(Classify, QubitUnrestrictedHasTwoAnyons) {
  const auto cat = classify(designated(qubit_bloch()), Topology::Unrestricted);
  EXPECT_EQ(cat.particles.size(), 4u);
  EXPECT_EQ(cat.count(ParticleKind::Anyon), 2u);
}

TEST(Classify, GbitIsBosonAndOneFermion) {
  const auto cat = classify(designated(gbit_square()), Topology::Simple);
  EXPECT_EQ(cat.count(ParticleKind::Boson), 1u);
  EXPECT_EQ(cat.count(ParticleKind::Fermion), 1u);
  EXPECT_TRUE(cat.fermion_sector_abelian);
}

TEST(Classify, Ball3WHasNineteenNonAbelianFermions) {
  const auto cat = classify(designated(ball3_w()), Topology::Simple);
  EXPECT_EQ(cat.count(ParticleKind::Boson), 1u);
  EXPECT_EQ(cat.count(ParticleKind::Fermion), 19u);
  EXPECT_EQ(cat.count(ParticleKind::Anyon), 0u);
  EXPECT_FALSE(cat.fermion_sector_abelian);
  ASSERT_TRUE(cat.witness_pair.has_value());
  EXPECT_EQ(cat.witness_pair->first.label, "flip_x");
  EXPECT_EQ(cat.witness_pair->second.label, "swap_xy");
  EXPECT_GT(commutator_distance(cat.witness_pair->first.element, cat.witness_pair->second.element),
            kDefaultTolerance);
  EXPECT_EQ(cat.involution_generated_order, 48u);
  EXPECT_FALSE(cat.involutions_form_subgroup);
}

TEST(Classify, Ball3WRotationSubsetFacts) {
  // Among the rotation-only involutions the diagonal pi-rotations commute with
  // each other, but an edge pi-rotation already fails to commute with them.
  const auto cat = classify(designated(ball3_w()), Topology::Simple);
  std::vector<Transformation> diag_rot, rot;
  for (const auto &p : cat.particles) {
    const Matrix b = p.element.matrix().block(1, 1, 3, 3);
    if (b.determinant() < 0) continue;
    rot.push_back(p.element);
    if (b.isDiagonal()) diag_rot.push_back(p.element);
  }
  EXPECT_EQ(rot.size(), 10u);       // identity, 3 face and 6 edge pi-rotations
  EXPECT_EQ(diag_rot.size(), 4u);
  EXPECT_TRUE(is_abelian(diag_rot).abelian);
  EXPECT_FALSE(is_abelian(rot).abelian);
}

TEST(Classify, PartitionAndSimpleSubsetOfUnrestricted) {
  for (const auto &name : builtin_names()) {
    const Theory t = *builtin(name);
    const auto pg = designated(t);
    const auto simple = classify(pg, Topology::Simple);
    const auto unres = classify(pg, Topology::Unrestricted);
    EXPECT_EQ(unres.particles.size(), pg.order());
    for (const auto &p : simple.particles) {
      EXPECT_NE(p.kind, ParticleKind::Anyon);
      EXPECT_NE(unres.find(p.label), nullptr);
    }
    EXPECT_EQ(simple.witness_pair.has_value(), !simple.fermion_sector_abelian);
  }
}

TEST(Survey, RowsForBuiltins) {
  const auto rows = survey({classical_bit(), gbit_square(), qubit_bloch(), ball3_w(), polygon(5)});
  auto find = [&](const std::string &t, const std::string &m) {
    for (const auto &r : rows)
      if (r.theory == t && r.measurement == m) return r;
    ADD_FAILURE() << "missing row " << t << "/" << m;
    return SurveyRow{};
  };
  const auto c = find("classical", "Z");
  EXPECT_EQ(c.phase_group_order, 1u);
  EXPECT_EQ(c.simple_count(), 1u);
  EXPECT_EQ(c.unrestricted_count(), 1u);
  EXPECT_TRUE(c.designated);
  const auto g = find("gbit", "X");
  EXPECT_EQ(g.phase_group_order, 2u);
  EXPECT_EQ(g.simple_fermions, 1u);
  EXPECT_TRUE(g.fermion_sector_abelian);
  EXPECT_EQ(find("qubit", "Z").phase_group_order, 4u);
  const auto w = find("ball3_w", "W");
  EXPECT_EQ(w.phase_group_order, 48u);
  EXPECT_EQ(w.simple_fermions, 19u);
  EXPECT_FALSE(w.fermion_sector_abelian);
  const auto p5 = find("polygon5", "Z");
  EXPECT_EQ(p5.group_order, 10u);
  EXPECT_EQ(p5.phase_group_order, 2u);
  EXPECT_EQ(p5.simple_fermions, 1u);
}

}  // namespace
