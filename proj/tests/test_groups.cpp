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


#include <gtest/gtest.h>

#include "gptlab/theories.hpp"
#include "oracles.hpp"

namespace {

using namespace gptlab;

Transformation lift3(const Matrix &b, const std::string &label) {
  return Transformation(oracle::embed3(b, 4), label);
}

std::vector<Transformation> b3_generators() {
  const auto g = hyperoctahedral_generators();
  return {lift3(g[0], "flip_x"), lift3(g[1], "swap_xy"), lift3(g[2], "cycle")};
}

std::vector<Transformation> d4_generators() {
  return {Transformation(make_matrix({{1, 0, 0}, {0, 0, 1}, {0, -1, 0}}), "rot90"),
          Transformation(make_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}), "reflect_z")};
}

TEST(Closure, IdentityOnly) {
  const auto g = closure({Transformation::identity(3)});
  EXPECT_EQ(g.order(), 1u);
  EXPECT_TRUE(g.closed());
  EXPECT_TRUE(g[0].is_identity());
}

TEST(Closure, DihedralFourMatchesExplicitSquareSymmetries) {
  const auto g = closure(d4_generators());
  ASSERT_EQ(g.order(), 8u);
  for (const auto &b : oracle::square_symmetries()) {
    Matrix m = Matrix::Identity(3, 3);
    m.block(1, 1, 2, 2) = b;
    EXPECT_TRUE(g.contains(m));
  }
}

TEST(Closure, HyperoctahedralMatchesSignedPermutationEnumeration) {
  const auto g = closure(b3_generators());
  ASSERT_EQ(g.order(), 48u);  // 2^3 * 3!
  const auto all = oracle::signed_permutations3();
  ASSERT_EQ(all.size(), 48u);
  for (const auto &m : all) EXPECT_TRUE(g.contains(oracle::embed3(m, 4)));
}

TEST(Closure, IdentityIsElementZeroAndLabelsTraceProducts) {
  const auto g = closure(d4_generators());
  EXPECT_EQ(g[0].label(), "e");
  for (const auto &t : g.elements()) {
    if (t.label() == "e") continue;
    // Rebuild every element from its label and compare.
    Matrix m = Matrix::Identity(3, 3);
    std::string lbl = t.label();
    std::size_t pos = 0;
    while (pos <= lbl.size()) {
      const auto next = lbl.find("·", pos);
      const std::string part = lbl.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      m = m * (part == "rot90" ? d4_generators()[0].matrix() : d4_generators()[1].matrix());
      if (next == std::string::npos) break;
      pos = next + std::string("·").size();
    }
    EXPECT_LT(max_abs(m - t.matrix()), 1e-12) << lbl;
  }
}

TEST(Closure, IsIdempotent) {
  const auto g = closure(b3_generators());
  const auto again = closure(g.elements());
  EXPECT_EQ(again.order(), g.order());
}

TEST(Closure, EveryElementHasInverse) {
  const auto g = closure(b3_generators());
  EXPECT_TRUE(g.verify_closed());
  for (std::size_t i = 0; i < g.order(); ++i) {
    const auto j = g.inverse_index(i);
    ASSERT_TRUE(j.has_value());
    EXPECT_LT(max_abs(g[i].matrix() * g[*j].matrix() - Matrix::Identity(4, 4)), 1e-12);
  }
}

TEST(Closure, NoDuplicatesWithinTolerance) {
  const auto g = closure(b3_generators());
  for (std::size_t i = 0; i < g.order(); ++i)
    for (std::size_t j = 0; j < i; ++j) EXPECT_GT(max_abs(g[i].matrix() - g[j].matrix()), 1e-9);
}

TEST(Closure, CapExceededReportsPartialCount) {
  // Rotation by an irrational multiple of pi never closes.
  const Transformation r = bloch_rz(1.0, "r1");
  try {
    closure({r}, 50);
    FAIL() << "expected GroupTooLarge";
  } catch (const GroupTooLarge &e) {
    EXPECT_GT(e.partial_count(), 50u);
  }
}

TEST(Closure, RejectsNonInvertibleGenerator) {
  const Transformation p(make_matrix({{1, 0}, {0, 0}}), "project");
  EXPECT_THROW(closure({p}), InvalidArgument);
}

TEST(Closure, RejectsMixedDimensions) {
  EXPECT_THROW(closure({Transformation::identity(2), Transformation::identity(3)}), Error);
}

TEST(Closure, OctahedralRotationsHaveOrder24) {
  const auto t = qubit_bloch();
  EXPECT_EQ(t.group().order(), 24u);
  for (const auto &g : t.group().elements()) {
    const Matrix b = g.matrix().block(1, 1, 3, 3);
    EXPECT_NEAR(b.determinant(), 1.0, 1e-12);
  }
}

TEST(Involutions, TrivialGroup) {
  const auto g = closure({Transformation::identity(2)});
  EXPECT_EQ(involutions(g).size(), 1u);
}

TEST(Involutions, DihedralFourHasSix) {
  const auto g = closure(d4_generators());
  const auto inv = involutions(g);
  EXPECT_EQ(inv.size(), 6u);
  // Oracle: filter the explicit symmetries by M^2 = 1.
  int count = 0;
  for (const auto &b : oracle::square_symmetries()) count += (b * b - Matrix::Identity(2, 2)).isZero();
  EXPECT_EQ(count, 6);
}

TEST(Involutions, HyperoctahedralHasTwenty) {
  const auto g = closure(b3_generators());
  const auto inv = involutions(g);
  EXPECT_EQ(inv.size(), 20u);
  // Oracle: diagonal sign matrices (8) plus one transposition with a sign
  // pattern making it self-inverse: 3 transpositions x 2 signs on the fixed
  // axis x 2 (both swapped entries share a sign) = 12.
  int diag = 0, transp = 0;
  for (const auto &m : oracle::signed_permutations3()) {
    if (!(m * m - Matrix::Identity(3, 3)).isZero()) continue;
    if (m.isDiagonal()) ++diag;
    else ++transp;
  }
  EXPECT_EQ(diag, 8);
  EXPECT_EQ(transp, 12);
}

TEST(Involutions, SquaresAreIdentityAndOthersFail) {
  const auto g = closure(b3_generators());
  const auto inv = involutions(g);
  for (const auto &t : inv) EXPECT_LT(max_abs(t.matrix() * t.matrix() - Matrix::Identity(4, 4)), 1e-12);
  for (const auto &t : g.elements()) {
    const bool listed = std::any_of(inv.begin(), inv.end(), [&](const Transformation &x) {
      return max_abs(x.matrix() - t.matrix()) < 1e-12;
    });
    if (!listed) {
      EXPECT_GT(max_abs(t.matrix() * t.matrix() - Matrix::Identity(4, 4)), kDefaultTolerance);
    }
  }
}

TEST(Abelian, SingleElementSet) { EXPECT_TRUE(is_abelian({Transformation::identity(3)}).abelian); }

TEST(Abelian, DiagonalPiRotationsCommute) {
  const auto s = std::vector<Transformation>{
      lift3(make_matrix({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}), "rx"),
      lift3(make_matrix({{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}}), "ry"),
      lift3(make_matrix({{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}), "rz")};
  const auto r = is_abelian(s);
  EXPECT_TRUE(r.abelian);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(Abelian, ReflectionAndSwapDoNotCommute) {
  const auto g = hyperoctahedral_generators();
  const auto r = is_abelian({lift3(g[0], "flip_x"), lift3(g[1], "swap_xy")});
  EXPECT_FALSE(r.abelian);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->first, 0u);
  EXPECT_EQ(r.witness->second, 1u);
  EXPECT_NEAR(r.witness_distance, 2.0, 1e-15);
}

TEST(Commutator, IdentityCommutesWithAnything) {
  EXPECT_EQ(commutator_distance(Transformation::identity(4), bloch_rx(0.3, "r")), 0.0);
}

TEST(Commutator, SameAxisRotations) {
  EXPECT_LT(commutator_distance(bloch_rz(std::numbers::pi / 2, "a"), bloch_rz(std::numbers::pi, "b")), 1e-15);
}

TEST(Commutator, ReflectionVersusSwapIsTwo) {
  const auto g = hyperoctahedral_generators();
  // Oracle: explicit products of the 3x3 blocks.
  const Matrix ab = g[0] * g[1], ba = g[1] * g[0];
  EXPECT_EQ((ab - ba).cwiseAbs().maxCoeff(), 2.0);
  EXPECT_EQ(commutator_distance(lift3(g[0], "a"), lift3(g[1], "b")), 2.0);
}

TEST(Group, FromElementsFlagsNonClosedSet) {
  const auto g = hyperoctahedral_generators();
  EXPECT_FALSE(TransformationGroup::from_elements({lift3(g[1], "swap"), lift3(g[2], "cycle")}).closed());
  EXPECT_TRUE(TransformationGroup::from_elements(closure(b3_generators()).elements()).closed());
}

}  // namespace
