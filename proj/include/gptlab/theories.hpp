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
 * @file theories.hpp
 * Built-in theories and the JSON theory-file loader.
 *
 * Theory file (format_version 1):
 *
 *   {
 *     "format_version": 1,
 *     "name": "gbit",
 *     "dimension": 3,
 *     "state_space": {"kind": "polytope", "vertices": [[1, 1, 1], ...]}
 *                  | {"kind": "ball_product", "ball_axes": [1, 2, 3],
 *                     "extra_axes": [4], "radius": 1}
 *                  | {"kind": "polytope_raw_gbit",
 *                     "vertices": [[pX+, pX-, pZ+, pZ-], ...]},
 *     "measurements": [{"name": "X", "effects": [[0.5, 0.5, 0], ...]}],
 *     "group": {"generators": [[[1, 0, 0], ...]], "closure_cap": 20000,
 *               "generator_labels": ["rot90", ...],      (optional)
 *               "continuous_symmetry": false},           (optional)
 *     "designated_measurement": "X"
 *   }
 *
 * All vectors are canonical (leading normalisation component) except the
 * raw gbit vertices, which are converted to (1, x, z) on load.
 */

#pragma once

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gptlab/groups.hpp"
#include "gptlab/theory.hpp"

namespace gptlab {

using json = nlohmann::json;

inline constexpr int kTheoryFormatVersion = 1;

/// Unreadable or malformed input (CLI exit code 2).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A theory document that does not follow the schema; `path` locates it.
class SchemaError : public InputError {
 public:
  SchemaError(std::string path, const std::string &what)
      : InputError("schema error at " + path + ": " + what), path_(std::move(path)) {}
  const std::string &path() const { return path_; }

 private:
  std::string path_;
};

namespace detail {

inline Measurement binary_axis_measurement(const std::string &name, Index dim, Index axis,
                                           double scale = 1.0) {
  Vector plus = Vector::Zero(dim), minus = Vector::Zero(dim);
  plus[0] = minus[0] = 0.5;
  plus[axis] = 0.5 * scale;
  minus[axis] = -0.5 * scale;
  return Measurement(name, {Effect(plus), Effect(minus)});
}

inline Matrix embed(const Matrix &block, Index offset, Index dim) {
  Matrix m = Matrix::Identity(dim, dim);
  m.block(offset, offset, block.rows(), block.cols()) = block;
  return m;
}

inline Matrix rotation2(double theta) {
  Matrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

}  // namespace detail

/// Bloch-representation rotation about z by theta acting on (1, x, y, z).
inline Transformation bloch_rz(double theta, std::string label) {
  return Transformation(detail::embed(detail::rotation2(theta), 1, 4), std::move(label));
}

inline Transformation bloch_rx(double theta, std::string label) {
  return Transformation(detail::embed(detail::rotation2(theta), 2, 4), std::move(label));
}

/// Canonical (1, x, z) from the raw table (p(+1|X), p(-1|X), p(+1|Z), p(-1|Z)).
inline Vector gbit_from_raw(const Vector &raw, double eps = kDefaultTolerance) {
  if (raw.size() != 4) throw DimensionMismatch(4, raw.size(), "gbit raw state");
  if (std::abs(raw[0] + raw[1] - 1.0) > eps || std::abs(raw[2] + raw[3] - 1.0) > eps)
    throw InvariantError("gbit.raw_rows_normalised", "raw state " + format_vector(raw) +
                                                        " does not have rows summing to 1");
  return make_vector({1.0, raw[0] - raw[1], raw[2] - raw[3]});
}

/// Inverse of gbit_from_raw.
inline Vector gbit_to_raw(const Vector &canonical) {
  if (canonical.size() != 3) throw DimensionMismatch(3, canonical.size(), "gbit canonical state");
  const double n = canonical[0];
  return make_vector({0.5 * (n + canonical[1]), 0.5 * (n - canonical[1]),
                      0.5 * (n + canonical[2]), 0.5 * (n - canonical[2])});
}

namespace detail {

inline Theory from_generators(std::string name, StateSpace space, std::vector<Measurement> ms,
                              std::vector<Transformation> gens, std::string designated,
                              bool continuous = false, std::size_t cap = kDefaultClosureCap,
                              double eps = kDefaultTolerance) {
  auto group = closure(gens, cap, eps);
  return make_theory(std::move(name), std::move(space), std::move(ms), std::move(group),
                     std::move(designated), std::move(gens), continuous, eps);
}

}  // namespace detail

/// 1-simplex (1, z), z = +-1, with a bit-flip symmetry.
inline Theory classical_bit() {
  auto space = StateSpace::polytope({State{1.0, 1.0}, State{1.0, -1.0}});
  std::vector<Measurement> ms{detail::binary_axis_measurement("Z", 2, 1)};
  std::vector<Transformation> gens{Transformation(make_matrix({{1, 0}, {0, -1}}), "flip")};
  return detail::from_generators("classical", std::move(space), std::move(ms), std::move(gens), "Z");
}

/**
 * Bloch ball (1, x, y, z) with X, Y, Z measurements. The group is the
 * 24-element octahedral rotation group, a finite subgroup of SO(3); other
 * rotations are still accepted as particles (continuous_symmetry).
 */
inline Theory qubit_bloch() {
  auto space = StateSpace::ball_product(4, {1, 2, 3}, {}, 1.0);
  std::vector<Measurement> ms{detail::binary_axis_measurement("X", 4, 1),
                              detail::binary_axis_measurement("Y", 4, 2),
                              detail::binary_axis_measurement("Z", 4, 3)};
  const double pi = std::numbers::pi;
  std::vector<Transformation> gens{bloch_rz(pi, "rz180"), bloch_rz(pi / 2, "rz90"),
                                   bloch_rx(pi / 2, "rx90")};
  return detail::from_generators("qubit", std::move(space), std::move(ms), std::move(gens), "Z",
                                 true);
}

/// Square with vertices (1, +-1, +-1) and the dihedral group D4.
inline Theory gbit_square() {
  std::vector<State> verts;
  for (const auto &raw : {make_vector({1, 0, 1, 0}), make_vector({1, 0, 0, 1}),
                          make_vector({0, 1, 1, 0}), make_vector({0, 1, 0, 1})})
    verts.emplace_back(gbit_from_raw(raw));
  auto space = StateSpace::polytope(std::move(verts));
  std::vector<Measurement> ms{detail::binary_axis_measurement("X", 3, 1),
                              detail::binary_axis_measurement("Z", 3, 2)};
  // rot90: (x, z) -> (z, -x); reflect_z: z -> -z.
  std::vector<Transformation> gens{
      Transformation(make_matrix({{1, 0, 0}, {0, 0, 1}, {0, -1, 0}}), "rot90"),
      Transformation(make_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}), "reflect_z")};
  return detail::from_generators("gbit", std::move(space), std::move(ms), std::move(gens), "X");
}

/// Signed 3x3 permutation generators of the hyperoctahedral group B3.
inline std::vector<Matrix> hyperoctahedral_generators() {
  return {make_matrix({{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),   // flip_x
          make_matrix({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}),    // swap_xy
          make_matrix({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}})};   // cycle x -> y -> z -> x
}

/**
 * Bloch ball on (x, y, z) times an interval on w, with X, Y, Z, W
 * measurements and B3 (rotations and reflections of the cube) acting on the
 * ball while fixing w.
 */
inline Theory ball3_w() {
  auto space = StateSpace::ball_product(5, {1, 2, 3}, {4}, 1.0);
  std::vector<Measurement> ms{detail::binary_axis_measurement("X", 5, 1),
                              detail::binary_axis_measurement("Y", 5, 2),
                              detail::binary_axis_measurement("Z", 5, 3),
                              detail::binary_axis_measurement("W", 5, 4)};
  const auto g = hyperoctahedral_generators();
  std::vector<Transformation> gens{Transformation(detail::embed(g[0], 1, 5), "flip_x"),
                                   Transformation(detail::embed(g[1], 1, 5), "swap_xy"),
                                   Transformation(detail::embed(g[2], 1, 5), "cycle_xyz")};
  return detail::from_generators("ball3_w", std::move(space), std::move(ms), std::move(gens), "W");
}

/**
 * Regular n-gon with vertices (1, sin(2 pi k / n), cos(2 pi k / n)), so a
 * vertex sits on the +z axis, and the dihedral group D_n. Measurements
 * Z = (1/2)(u +- z / z_max) and X likewise, scaled to stay valid.
 */
inline Theory polygon(int n) {
  if (n < 3) throw InvalidArgument("polygon: n must be >= 3 (got " + std::to_string(n) + ")");
  const double pi = std::numbers::pi;
  std::vector<State> verts;
  double xmax = 0.0, zmax = 0.0;
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * pi * k / n;
    verts.push_back(State{1.0, std::sin(a), std::cos(a)});
    xmax = std::max(xmax, std::abs(std::sin(a)));
    zmax = std::max(zmax, std::abs(std::cos(a)));
  }
  auto space = StateSpace::polytope(std::move(verts));
  std::vector<Measurement> ms{detail::binary_axis_measurement("X", 3, 1, 1.0 / xmax),
                              detail::binary_axis_measurement("Z", 3, 2, 1.0 / zmax)};
  // Rotation by 2 pi / n in the (x, z) plane and the mirror x -> -x.
  Matrix rot = detail::embed(detail::rotation2(2.0 * pi / n), 1, 3);
  std::vector<Transformation> gens{
      Transformation(std::move(rot), "rot" + std::to_string(n)),
      Transformation(make_matrix({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}), "reflect_x")};
  return detail::from_generators("polygon" + std::to_string(n), std::move(space), std::move(ms),
                                 std::move(gens), "Z");
}

/// Names accepted by builtin(); "polygonN" works for any N >= 3.
inline std::vector<std::string> builtin_names() {
  return {"classical", "gbit", "qubit", "ball3_w", "polygon3", "polygon4", "polygon5", "polygon6"};
}

inline std::optional<Theory> builtin(const std::string &name) {
  if (name == "classical" || name == "classical_bit") return classical_bit();
  if (name == "gbit" || name == "gbit_square") return gbit_square();
  if (name == "qubit" || name == "qubit_bloch") return qubit_bloch();
  if (name == "ball3_w") return ball3_w();
  std::string_view rest;
  if (name.starts_with("polygon:")) rest = std::string_view(name).substr(8);
  else if (name.starts_with("polygon")) rest = std::string_view(name).substr(7);
  else return std::nullopt;
  if (rest.empty() || rest.find_first_not_of("0123456789") != std::string_view::npos || rest.size() > 4)
    return std::nullopt;
  return polygon(std::stoi(std::string(rest)));
}

// ---------------------------------------------------------------------------
// Serialisation

namespace detail {

inline json vector_json(const Vector &v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i] == 0.0 ? 0.0 : v[i]);
  return a;
}

inline json matrix_json(const Matrix &m) {
  json a = json::array();
  for (Index i = 0; i < m.rows(); ++i) a.push_back(vector_json(m.row(i).transpose()));
  return a;
}

}  // namespace detail

inline json to_json(const Theory &t, std::size_t cap = kDefaultClosureCap) {
  json j;
  j["format_version"] = kTheoryFormatVersion;
  j["name"] = t.name();
  j["dimension"] = t.dim();
  json ss;
  if (const auto *poly = t.space().as_polytope()) {
    ss["kind"] = "polytope";
    ss["vertices"] = json::array();
    for (const auto &v : poly->vertices) ss["vertices"].push_back(detail::vector_json(v.vector()));
  } else {
    const auto &bp = *t.space().as_ball_product();
    ss["kind"] = "ball_product";
    ss["ball_axes"] = bp.ball_axes;
    ss["extra_axes"] = bp.extra_axes;
    ss["radius"] = bp.radius;
  }
  j["state_space"] = ss;
  j["measurements"] = json::array();
  for (const auto &m : t.measurements()) {
    json mj;
    mj["name"] = m.name();
    mj["effects"] = json::array();
    for (const auto &e : m.effects()) mj["effects"].push_back(detail::vector_json(e.vector()));
    j["measurements"].push_back(mj);
  }
  json g;
  g["generators"] = json::array();
  g["generator_labels"] = json::array();
  const auto &gens = t.generators();
  if (!gens.empty()) {
    for (const auto &x : gens) {
      g["generators"].push_back(detail::matrix_json(x.matrix()));
      g["generator_labels"].push_back(x.label());
    }
  } else {
    for (const auto &x : t.group().elements()) {
      if (x.is_identity()) continue;
      g["generators"].push_back(detail::matrix_json(x.matrix()));
      g["generator_labels"].push_back(x.label());
    }
    if (g["generators"].empty()) {
      g["generators"].push_back(detail::matrix_json(Matrix::Identity(t.dim(), t.dim())));
      g["generator_labels"].push_back("e");
    }
  }
  g["closure_cap"] = cap;
  g["continuous_symmetry"] = t.continuous_symmetry();
  j["group"] = g;
  j["designated_measurement"] = t.designated_measurement_name();
  return j;
}

// ---------------------------------------------------------------------------
// Loading

struct LoadOptions {
  double eps = kDefaultTolerance;
  /// Overrides the document's closure_cap when set.
  std::optional<std::size_t> closure_cap;
};

namespace detail {

inline const json &require(const json &obj, const std::string &key, const std::string &path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key, "missing required field");
  return *it;
}

inline double number_at(const json &j, const std::string &path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw SchemaError(path, "non-finite number");
  return x;
}

inline Vector vector_at(const json &j, const std::string &path, std::optional<Index> dim) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of numbers");
  if (dim && static_cast<Index>(j.size()) != *dim)
    throw SchemaError(path, "expected " + std::to_string(*dim) + " entries, got " + std::to_string(j.size()));
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Index>(i)] = number_at(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

inline Matrix matrix_at(const json &j, const std::string &path, Index dim) {
  if (!j.is_array() || static_cast<Index>(j.size()) != dim)
    throw SchemaError(path, "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
  Matrix m(dim, dim);
  for (Index i = 0; i < dim; ++i)
    m.row(i) = vector_at(j[static_cast<std::size_t>(i)], path + "[" + std::to_string(i) + "]", dim).transpose();
  return m;
}

inline std::vector<Index> axes_at(const json &j, const std::string &path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of axis indices");
  std::vector<Index> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) throw SchemaError(path + "[" + std::to_string(i) + "]", "expected an integer");
    out.push_back(j[i].get<Index>());
  }
  return out;
}

inline std::string string_at(const json &j, const std::string &path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

}  // namespace detail

/**
 * Parses and fully validates a theory document.
 *
 * Throws SchemaError (malformed document), InvariantError (a theory
 * invariant fails; names the invariant) or GroupTooLarge.
 */
inline Theory load(const json &doc, const LoadOptions &opt = {}) {
  using namespace detail;
  const double eps = opt.eps;
  if (!doc.is_object()) throw SchemaError("$", "expected a JSON object");
  const json &ver = require(doc, "format_version", "$");
  if (!ver.is_number_integer() || ver.get<int>() != kTheoryFormatVersion)
    throw SchemaError("$.format_version", "unsupported format version " + ver.dump());
  const std::string name = string_at(require(doc, "name", "$"), "$.name");
  const json &dimj = require(doc, "dimension", "$");
  if (!dimj.is_number_integer() || dimj.get<long long>() < 1 || dimj.get<long long>() > 4096)
    throw SchemaError("$.dimension", "expected a positive integer");
  const auto dim = dimj.get<Index>();

  const json &ssj = require(doc, "state_space", "$");
  const std::string kind = string_at(require(ssj, "kind", "$.state_space"), "$.state_space.kind");
  std::optional<StateSpace> space;
  if (kind == "polytope" || kind == "polytope_raw_gbit") {
    const bool raw = kind == "polytope_raw_gbit";
    if (raw && dim != 3) throw SchemaError("$.dimension", "polytope_raw_gbit requires dimension 3");
    const json &vj = require(ssj, "vertices", "$.state_space");
    if (!vj.is_array() || vj.empty()) throw SchemaError("$.state_space.vertices", "expected a non-empty array");
    std::vector<State> verts;
    for (std::size_t i = 0; i < vj.size(); ++i) {
      const std::string p = "$.state_space.vertices[" + std::to_string(i) + "]";
      Vector v = vector_at(vj[i], p, raw ? Index{4} : dim);
      verts.emplace_back(raw ? gbit_from_raw(v, eps) : v);
    }
    space = StateSpace::polytope(std::move(verts), eps);
  } else if (kind == "ball_product") {
    auto ball = axes_at(require(ssj, "ball_axes", "$.state_space"), "$.state_space.ball_axes");
    auto extra = axes_at(require(ssj, "extra_axes", "$.state_space"), "$.state_space.extra_axes");
    const double radius = number_at(require(ssj, "radius", "$.state_space"), "$.state_space.radius");
    try {
      space = StateSpace::ball_product(dim, std::move(ball), std::move(extra), radius);
    } catch (const InvalidArgument &e) {
      throw SchemaError("$.state_space", e.what());
    }
  } else {
    throw SchemaError("$.state_space.kind", "unknown kind '" + kind + "'");
  }

  const json &msj = require(doc, "measurements", "$");
  if (!msj.is_array()) throw SchemaError("$.measurements", "expected an array");
  if (msj.empty()) throw InvariantError("theory.measurements_non_empty", "theory '" + name + "' has no measurements");
  std::vector<Measurement> ms;
  for (std::size_t i = 0; i < msj.size(); ++i) {
    const std::string p = "$.measurements[" + std::to_string(i) + "]";
    const std::string mname = string_at(require(msj[i], "name", p), p + ".name");
    const json &ej = require(msj[i], "effects", p);
    if (!ej.is_array() || ej.empty()) throw SchemaError(p + ".effects", "expected a non-empty array");
    std::vector<Effect> effects;
    for (std::size_t k = 0; k < ej.size(); ++k)
      effects.emplace_back(vector_at(ej[k], p + ".effects[" + std::to_string(k) + "]", dim));
    ms.emplace_back(mname, std::move(effects), eps);
  }

  const json &gj = require(doc, "group", "$");
  const json &gens_j = require(gj, "generators", "$.group");
  if (!gens_j.is_array() || gens_j.empty()) throw SchemaError("$.group.generators", "expected a non-empty array");
  std::vector<std::string> labels;
  if (auto it = gj.find("generator_labels"); it != gj.end()) {
    if (!it->is_array() || it->size() != gens_j.size())
      throw SchemaError("$.group.generator_labels", "expected one label per generator");
    for (std::size_t i = 0; i < it->size(); ++i)
      labels.push_back(string_at((*it)[i], "$.group.generator_labels[" + std::to_string(i) + "]"));
  }
  std::vector<Transformation> gens;
  for (std::size_t i = 0; i < gens_j.size(); ++i) {
    const std::string p = "$.group.generators[" + std::to_string(i) + "]";
    gens.emplace_back(matrix_at(gens_j[i], p, dim), labels.empty() ? "g" + std::to_string(i) : labels[i], eps);
  }
  std::size_t cap = kDefaultClosureCap;
  if (auto it = gj.find("closure_cap"); it != gj.end()) {
    if (!it->is_number_integer() || it->get<long long>() < 1)
      throw SchemaError("$.group.closure_cap", "expected a positive integer");
    cap = it->get<std::size_t>();
  }
  if (opt.closure_cap) cap = *opt.closure_cap;
  bool continuous = false;
  if (auto it = gj.find("continuous_symmetry"); it != gj.end()) {
    if (!it->is_boolean()) throw SchemaError("$.group.continuous_symmetry", "expected a boolean");
    continuous = it->get<bool>();
  }
  const std::string designated =
      string_at(require(doc, "designated_measurement", "$"), "$.designated_measurement");
  if (std::none_of(ms.begin(), ms.end(), [&](const Measurement &m) { return m.name() == designated; }))
    throw SchemaError("$.designated_measurement", "no measurement named '" + designated + "'");

  TransformationGroup group = [&] {
    try {
      return closure(gens, cap, eps);
    } catch (const InvalidArgument &e) {
      throw InvariantError("group.generators_invertible", e.what());
    }
  }();
  return make_theory(name, std::move(*space), std::move(ms), std::move(group), designated,
                     std::move(gens), continuous, eps);
}

inline Theory load(std::string_view text, const LoadOptions &opt = {}) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw SchemaError("$", std::string("invalid JSON: ") + e.what());
  }
  return load(doc, opt);
}

// Exact-match overloads; json is implicitly constructible from strings.
inline Theory load(const std::string &text, const LoadOptions &opt = {}) {
  return load(std::string_view(text), opt);
}

inline Theory load(const char *text, const LoadOptions &opt = {}) {
  return load(std::string_view(text), opt);
}

inline Theory load_file(const std::string &path, const LoadOptions &opt = {}) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read theory file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load(std::string_view(ss.str()), opt);
}

/// A builtin name (see builtin_names()) or a path to a theory file.
inline Theory resolve_theory(const std::string &name_or_path, const LoadOptions &opt = {}) {
  if (auto t = builtin(name_or_path)) return std::move(*t);
  return load_file(name_or_path, opt);
}

}  // namespace gptlab
