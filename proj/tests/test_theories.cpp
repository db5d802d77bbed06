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

#include "gptlab/phase.hpp"
#include "gptlab/theories.hpp"
#include "oracles.hpp"

namespace {

using namespace gptlab;

json gbit_doc() { return to_json(gbit_square()); }

template <typename E>
E expect_load_error(const json &doc) {
  try {
    load(doc);
  } catch (const E &e) {
    return e;
  }
  ADD_FAILURE() << "expected an exception from load";
  throw std::runtime_error("unreachable");
}

TEST(Builtins, AllValidateCleanly) {
  for (const auto &name : builtin_names()) {
    const auto t = builtin(name);
    ASSERT_TRUE(t.has_value()) << name;
    const auto ds = validate(*t);
    for (const auto &d : ds) EXPECT_TRUE(d.ok) << name << ": " << d.invariant << " " << d.detail;
  }
}

TEST(Builtins, ClassicalBit) {
  const Theory t = classical_bit();
  const auto &vs = t.space().as_polytope()->vertices;
  ASSERT_EQ(vs.size(), 2u);
  EXPECT_EQ(vs[0], (State{1, 1}));
  EXPECT_EQ(vs[1], (State{1, -1}));
  EXPECT_EQ(t.group().order(), 2u);
  EXPECT_EQ(compute_phase_group(t, "Z").order(), 1u);
}

TEST(Builtins, QubitZEffectOnPole) {
  const Theory t = qubit_bloch();
  EXPECT_NEAR(probability(t.measurement("Z").effects()[0], State{1, 0, 0, 1}), 1.0, 1e-15);
  EXPECT_TRUE(t.continuous_symmetry());
  EXPECT_EQ(t.designated_measurement_name(), "Z");
}

TEST(Builtins, GbitVerticesMatchRawTable) {
  const Theory t = gbit_square();
  const std::vector<Vector> raw{make_vector({1, 0, 1, 0}), make_vector({1, 0, 0, 1}), make_vector({0, 1, 1, 0}),
                                make_vector({0, 1, 0, 1})};
  const auto &vs = t.space().as_polytope()->vertices;
  ASSERT_EQ(vs.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(gbit_to_raw(vs[i].vector()), raw[i]);
    // Oracle: x = p(+|X) - p(-|X), z = p(+|Z) - p(-|Z).
    EXPECT_EQ(vs[i].vector(), make_vector({1, raw[i][0] - raw[i][1], raw[i][2] - raw[i][3]}));
  }
  EXPECT_EQ(t.group().order(), 8u);
  EXPECT_EQ(compute_phase_group(t, "X").order(), 2u);
}

TEST(Builtins, GbitRawRejectsBadRows) {
  EXPECT_THROW(gbit_from_raw(make_vector({0.5, 0.6, 1, 0})), InvariantError);
}

TEST(Builtins, Ball3W) {
  const Theory t = ball3_w();
  EXPECT_EQ(t.dim(), 5);
  EXPECT_EQ(t.group().order(), 48u);
  for (const auto &g : t.group().elements()) {
    EXPECT_EQ(g.matrix()(4, 4), 1.0);
    EXPECT_EQ(g.matrix().row(4).sum(), 1.0);
  }
  EXPECT_EQ(compute_phase_group(t, "W").order(), 48u);
}

TEST(Builtins, PolygonGroupOrderIsTwoN) {
  for (int n = 3; n <= 9; ++n) EXPECT_EQ(polygon(n).group().order(), static_cast<std::size_t>(2 * n)) << n;
  EXPECT_THROW(polygon(2), InvalidArgument);
}

TEST(Builtins, PolygonFourIsGbitUpToRotation) {
  // Oracle: rotate the gbit vertices by 45 degrees and rescale to the unit circle.
  const auto p4 = polygon(4).space();
  const auto sq = gbit_square().space();
  const double c = std::sqrt(0.5);
  for (const auto &v : sq.as_polytope()->vertices) {
    const double x = c * (v[1] - v[2]) / std::sqrt(2.0);
    const double z = c * (v[1] + v[2]) / std::sqrt(2.0);
    bool found = false;
    for (const auto &w : p4.as_polytope()->vertices) found = found || (std::abs(w[1] - x) < 1e-12 && std::abs(w[2] - z) < 1e-12);
    EXPECT_TRUE(found) << x << "," << z;
  }
}

TEST(Builtins, PolygonFourAndGbitCatalogsAgree) {
  for (auto topo : {Topology::Simple, Topology::Unrestricted}) {
    const Theory a = polygon(4), b = gbit_square();
    const auto ca = classify(compute_phase_group(a, a.designated_measurement()), topo);
    const auto cb = classify(compute_phase_group(b, b.designated_measurement()), topo);
    EXPECT_EQ(ca.phase_group_order, cb.phase_group_order);
    for (auto k : {ParticleKind::Boson, ParticleKind::Fermion, ParticleKind::Anyon}) EXPECT_EQ(ca.count(k), cb.count(k));
    EXPECT_EQ(ca.fermion_sector_abelian, cb.fermion_sector_abelian);
  }
}

TEST(Builtins, LookupByName) {
  EXPECT_TRUE(builtin("polygon:7").has_value());
  EXPECT_EQ(builtin("polygon7")->name(), "polygon7");
  EXPECT_FALSE(builtin("polygonx").has_value());
  EXPECT_FALSE(builtin("nothing").has_value());
  EXPECT_THROW(builtin("polygon2"), InvalidArgument);
}

TEST(Loader, RoundTripIsExact) {
  for (const auto &name : builtin_names()) {
    const Theory t = *builtin(name);
    const json doc = to_json(t);
    const Theory back = load(doc.dump());
    EXPECT_EQ(to_json(back), doc) << name;
    EXPECT_EQ(back.group().order(), t.group().order());
    EXPECT_EQ(back.continuous_symmetry(), t.continuous_symmetry());
  }
}

TEST(Loader, RawGbitKind) {
  json doc = gbit_doc();
  doc["state_space"] = {{"kind", "polytope_raw_gbit"},
                        {"vertices", {{1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}}}};
  const Theory t = load(doc);
  EXPECT_EQ(t.space().as_polytope()->vertices[0], (State{1, 1, 1}));
  EXPECT_EQ(t.group().order(), 8u);
}

TEST(Loader, EffectsNotSummingToUnitNameTheMeasurement) {
  json doc = gbit_doc();
  doc["measurements"][1]["effects"][0][0] = 0.7;
  const auto e = expect_load_error<InvariantError>(doc);
  EXPECT_EQ(e.invariant(), "measurement.sums_to_unit[Z]");
}

TEST(Loader, InvalidEffectNamesTheMeasurement) {
  json doc = gbit_doc();
  doc["measurements"][0]["effects"] = {{0.5, 1.0, 0.0}, {0.5, -1.0, 0.0}};
  const auto e = expect_load_error<InvariantError>(doc);
  EXPECT_NE(std::string(e.what()).find("[X]"), std::string::npos) << e.what();
}

TEST(Loader, NonInvertibleGenerator) {
  json doc = gbit_doc();
  doc["group"]["generators"][0] = {{1, 0, 0}, {0, 0, 0}, {0, 0, 1}};
  const auto e = expect_load_error<InvariantError>(doc);
  EXPECT_EQ(e.invariant(), "group.generators_invertible");
}

TEST(Loader, DisallowedGeneratorFailsValidation) {
  json doc = gbit_doc();
  doc["group"]["generators"][0] = {{1, 0, 0}, {0, 2, 0}, {0, 0, 0.5}};
  doc["group"]["closure_cap"] = 100;
  EXPECT_THROW(load(doc), Error);
}

TEST(Loader, ClosureCapExceeded) {
  json doc = to_json(qubit_bloch());
  doc["group"]["generators"] = {detail::matrix_json(bloch_rz(1.0, "r").matrix())};
  doc["group"]["generator_labels"] = {"r"};
  doc["group"]["closure_cap"] = 100;
  EXPECT_THROW(load(doc), GroupTooLarge);
}

TEST(Loader, SchemaErrorsAreLocated) {
  {
    json doc = gbit_doc();
    doc.erase("name");
    EXPECT_EQ(expect_load_error<SchemaError>(doc).path(), "$.name");
  }
  {
    json doc = gbit_doc();
    doc["format_version"] = 2;
    EXPECT_EQ(expect_load_error<SchemaError>(doc).path(), "$.format_version");
  }
  {
    json doc = gbit_doc();
    doc["measurements"][1]["effects"][1] = {0.5, "x", 0.5};
    EXPECT_EQ(expect_load_error<SchemaError>(doc).path(), "$.measurements[1].effects[1][1]");
  }
  {
    json doc = gbit_doc();
    doc["state_space"]["vertices"][2] = {1, 0};
    EXPECT_EQ(expect_load_error<SchemaError>(doc).path(), "$.state_space.vertices[2]");
  }
  {
    json doc = gbit_doc();
    doc["state_space"]["kind"] = "sphere";
    EXPECT_EQ(expect_load_error<SchemaError>(doc).path(), "$.state_space.kind");
  }
  {
    json doc = gbit_doc();
    doc["designated_measurement"] = "Y";
    EXPECT_EQ(expect_load_error<SchemaError>(doc).path(), "$.designated_measurement");
  }
  EXPECT_THROW(load(std::string_view("{not json")), SchemaError);
}

TEST(Loader, MissingFileIsInputError) {
  EXPECT_THROW(load_file("/nonexistent/theory.json"), InputError);
  EXPECT_THROW(resolve_theory("/nonexistent/theory.json"), InputError);
}

TEST(Loader, BundledDataFilesLoad) {
  const std::string dir = GPTLAB_DATA_DIR;
  for (const auto &name : {"classical", "gbit", "qubit", "ball3_w"}) {
    const std::string path = dir + "/theories/" + name + ".json";
    const Theory t = load_file(path);
    EXPECT_EQ(to_json(t), to_json(*builtin(name))) << path;
  }
}

TEST(Validate, ReportsEveryInvariant) {
  const auto ds = validate(gbit_square());
  std::vector<std::string> names;
  for (const auto &d : ds) names.push_back(d.invariant);
  for (const char *want : {"measurement.sums_to_unit[X]", "measurement.valid_effects[Z]", "group.contains_identity",
                           "group.closed", "group.elements_allowed", "group.elements_reversible",
                           "theory.designated_measurement_binary"})
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
}

}  // namespace
