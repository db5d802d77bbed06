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
 * @file core.hpp
 * States, effects, measurements, state spaces and transformations of the
 * convex framework, together with their membership / validity checks.
 *
 * Canonical representation: entry 0 of a state vector is its normalisation
 * (1 for normalised states), the unit effect is (1, 0, ..., 0) and every
 * transformation has first row (1, 0, ..., 0).
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gptlab/numeric.hpp"

namespace gptlab {

namespace detail {

inline Vector checked_real_vector(Vector v, const char *what) {
  if (v.size() == 0)
    throw InvalidArgument(std::string(what) + ": vector must be non-empty");
  if (!v.allFinite())
    throw InvalidArgument(std::string(what) + ": non-finite entry");
  return v;
}

}  // namespace detail

/// A (possibly sub-normalised) state vector.
class State {
 public:
  explicit State(Vector v) : v_(detail::checked_real_vector(std::move(v), "State")) {}
  State(std::initializer_list<double> xs) : State(make_vector(xs)) {}

  const Vector &vector() const { return v_; }
  Index dim() const { return v_.size(); }
  double normalisation() const { return v_[0]; }
  bool is_normalised(double eps = kDefaultTolerance) const {
    return std::abs(v_[0] - 1.0) <= eps;
  }
  double operator[](Index i) const { return v_[i]; }

  friend bool operator==(const State &a, const State &b) { return a.v_ == b.v_; }

 private:
  Vector v_;
};

class Effect {
 public:
  explicit Effect(Vector v) : v_(detail::checked_real_vector(std::move(v), "Effect")) {}
  Effect(std::initializer_list<double> xs) : Effect(make_vector(xs)) {}

  const Vector &vector() const { return v_; }
  Index dim() const { return v_.size(); }

  friend bool operator==(const Effect &a, const Effect &b) { return a.v_ == b.v_; }

 private:
  Vector v_;
};

inline Effect unit_effect(Index dim) {
  if (dim <= 0) throw InvalidArgument("unit_effect: dimension must be positive");
  Vector u = Vector::Zero(dim);
  u[0] = 1.0;
  return Effect(std::move(u));
}

/// An effect that returns probabilities outside [0, 1] on some state.
class InvalidEffect : public Error {
 public:
  InvalidEffect(const std::string &what, Vector witness)
      : Error(what + " (witness state " + format_vector(witness) + ")"),
        witness_(std::move(witness)) {}
  const Vector &witness() const { return witness_; }

 private:
  Vector witness_;
};

/// A named list of effects summing to the unit effect.
class Measurement {
 public:
  Measurement(std::string name, std::vector<Effect> effects,
              double eps = kDefaultTolerance)
      : name_(std::move(name)), effects_(std::move(effects)) {
    if (effects_.empty())
      throw InvariantError("measurement.non_empty[" + name_ + "]",
                           "measurement has no effects");
    const Index d = effects_.front().dim();
    Vector sum = Vector::Zero(d);
    for (const auto &e : effects_) {
      if (e.dim() != d) throw DimensionMismatch(d, e.dim(), "Measurement '" + name_ + "'");
      sum += e.vector();
    }
    const double gap = max_abs(sum - unit_effect(d).vector());
    if (gap > eps)
      throw InvariantError("measurement.sums_to_unit[" + name_ + "]",
                           "effects sum to " + format_vector(sum) +
                               " (max deviation " + std::to_string(gap) + ")");
  }

  const std::string &name() const { return name_; }
  const std::vector<Effect> &effects() const { return effects_; }
  std::size_t size() const { return effects_.size(); }
  Index dim() const { return effects_.front().dim(); }
  bool is_binary() const { return effects_.size() == 2; }

 private:
  std::string name_;
  std::vector<Effect> effects_;
};

/// Convex hull of a finite list of normalised, extremal vertices.
struct Polytope {
  std::vector<State> vertices;
};

/// States (1, b, w): ||b||_2 <= radius on ball_axes, |w_j| <= 1 on extra_axes.
struct BallProduct {
  std::vector<Index> ball_axes;
  std::vector<Index> extra_axes;
  double radius = 1.0;
};

class StateSpace {
 public:
  using Kind = std::variant<Polytope, BallProduct>;

  /// Validates normalisation, pairwise distinctness and extremality
  /// (leave-one-out feasibility) of the vertices.
  static StateSpace polytope(std::vector<State> vertices,
                             double eps = kDefaultTolerance);

  /// The axes must partition {1, ..., dim - 1}.
  static StateSpace ball_product(Index dim, std::vector<Index> ball_axes,
                                 std::vector<Index> extra_axes,
                                 double radius = 1.0);

  Index dim() const { return dim_; }
  const Kind &kind() const { return kind_; }
  bool is_polytope() const { return std::holds_alternative<Polytope>(kind_); }
  const Polytope *as_polytope() const { return std::get_if<Polytope>(&kind_); }
  const BallProduct *as_ball_product() const { return std::get_if<BallProduct>(&kind_); }

 private:
  StateSpace(Index dim, Kind kind) : dim_(dim), kind_(std::move(kind)) {}
  Index dim_;
  Kind kind_;
};

/// A real square matrix acting on state vectors.
class Transformation {
 public:
  Transformation(Matrix m, std::string label, double eps = kDefaultTolerance)
      : m_(std::move(m)), label_(std::move(label)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols())
      throw InvalidArgument("Transformation '" + label_ + "': matrix must be square and non-empty");
    if (!m_.allFinite())
      throw InvalidArgument("Transformation '" + label_ + "': non-finite entry");
    Vector first = Vector::Zero(m_.cols());
    first[0] = 1.0;
    if (max_abs(m_.row(0).transpose() - first) > eps)
      throw InvariantError("transformation.preserves_normalisation[" + label_ + "]",
                           "first row is " + format_vector(m_.row(0).transpose()));
  }

  static Transformation identity(Index dim, std::string label = "e") {
    return Transformation(Matrix::Identity(dim, dim), std::move(label));
  }

  const Matrix &matrix() const { return m_; }
  const std::string &label() const { return label_; }
  Index dim() const { return m_.rows(); }

  bool is_identity(double eps = kDefaultTolerance) const {
    return max_abs(m_ - Matrix::Identity(dim(), dim())) <= eps;
  }

  /// Composition: (*this) applied after `rhs`.
  Transformation operator*(const Transformation &rhs) const {
    if (dim() != rhs.dim()) throw DimensionMismatch(dim(), rhs.dim(), "Transformation product");
    return Transformation(m_ * rhs.m_, label_ + "·" + rhs.label_);
  }

 private:
  Matrix m_;
  std::string label_;
};

// ---------------------------------------------------------------------------
// Probability

/// e.s for a normalised state; throws InvalidEffect if the value leaves
/// [-eps, 1 + eps], otherwise clamps to [0, 1].
inline double probability(const Effect &e, const State &s,
                          double eps = kDefaultTolerance) {
  if (e.dim() != s.dim()) throw DimensionMismatch(e.dim(), s.dim(), "probability");
  if (!s.is_normalised(eps))
    throw InvalidArgument("probability: state is not normalised (entry 0 = " +
                          std::to_string(s.normalisation()) + ")");
  const double p = e.vector().dot(s.vector());
  if (p < -eps || p > 1.0 + eps)
    throw InvalidEffect("probability " + std::to_string(p) + " outside [0,1]",
                        s.vector());
  return std::clamp(p, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Membership

namespace detail {

inline double ball_norm(const BallProduct &bp, const Eigen::Ref<const Vector> &s) {
  double acc = 0.0;
  for (Index a : bp.ball_axes) acc += s[a] * s[a];
  return std::sqrt(acc);
}

inline Matrix vertex_matrix(const std::vector<State> &vs, Index dim,
                            std::optional<std::size_t> skip = std::nullopt) {
  const auto n = static_cast<Index>(vs.size() - (skip ? 1 : 0));
  Matrix V(dim, n);
  Index c = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (skip && *skip == i) continue;
    V.col(c++) = vs[i].vector();
  }
  return V;
}

/// Convex-hull feasibility via NNLS. The first row of V is all ones and
/// s[0] is required to be 1, so the weights automatically sum to one.
inline bool in_hull(const Matrix &V, const Eigen::Ref<const Vector> &s, double eps) {
  const NnlsResult r = nnls(V, s);
  if (r.residual <= eps) return true;
  if (!r.converged)
    throw NumericError("polytope membership: solver did not converge", r.residual);
  return false;
}

}  // namespace detail

inline bool is_member(const Eigen::Ref<const Vector> &s, const StateSpace &space,
                      double eps = kDefaultTolerance) {
  if (s.size() != space.dim()) throw DimensionMismatch(space.dim(), s.size(), "is_member");
  if (!s.allFinite() || std::abs(s[0] - 1.0) > eps) return false;
  if (const auto *poly = space.as_polytope()) {
    return detail::in_hull(detail::vertex_matrix(poly->vertices, space.dim()), s, eps);
  }
  const auto &bp = *space.as_ball_product();
  if (!bp.ball_axes.empty() && detail::ball_norm(bp, s) > bp.radius + eps) return false;
  for (Index a : bp.extra_axes)
    if (std::abs(s[a]) > 1.0 + eps) return false;
  return true;
}

inline bool is_member(const State &s, const StateSpace &space,
                      double eps = kDefaultTolerance) {
  return is_member(s.vector(), space, eps);
}

/// Throws InvalidArgument for non-members.
inline bool is_pure(const State &s, const StateSpace &space,
                    double eps = kDefaultTolerance) {
  if (!is_member(s, space, eps)) throw InvalidArgument("is_pure: state is not a member of the space");
  if (const auto *poly = space.as_polytope()) {
    return std::any_of(poly->vertices.begin(), poly->vertices.end(), [&](const State &v) {
      return max_abs(v.vector() - s.vector()) <= eps;
    });
  }
  const auto &bp = *space.as_ball_product();
  if (!bp.ball_axes.empty() && std::abs(detail::ball_norm(bp, s.vector()) - bp.radius) > eps)
    return false;
  return std::all_of(bp.extra_axes.begin(), bp.extra_axes.end(),
                     [&](Index a) { return std::abs(std::abs(s[a]) - 1.0) <= eps; });
}

inline StateSpace StateSpace::polytope(std::vector<State> vertices, double eps) {
  if (vertices.empty()) throw InvalidArgument("polytope: at least one vertex required");
  const Index dim = vertices.front().dim();
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto &v = vertices[i];
    if (v.dim() != dim) throw DimensionMismatch(dim, v.dim(), "polytope vertex " + std::to_string(i));
    if (!v.is_normalised(eps))
      throw InvariantError("state_space.vertices_normalised",
                           "vertex " + std::to_string(i) + " = " + format_vector(v.vector()));
    for (std::size_t j = 0; j < i; ++j) {
      if (max_abs(vertices[j].vector() - v.vector()) <= eps)
        throw InvariantError("state_space.vertices_distinct",
                             "vertices " + std::to_string(j) + " and " + std::to_string(i) +
                                 " coincide at " + format_vector(v.vector()));
    }
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Matrix others = detail::vertex_matrix(vertices, dim, i);
    if (detail::in_hull(others, vertices[i].vector(), eps))
      throw InvariantError("state_space.vertices_extremal",
                           "vertex " + std::to_string(i) + " = " +
                               format_vector(vertices[i].vector()) +
                               " is a convex combination of the others");
  }
  return StateSpace(dim, Polytope{std::move(vertices)});
}

inline StateSpace StateSpace::ball_product(Index dim, std::vector<Index> ball_axes,
                                           std::vector<Index> extra_axes, double radius) {
  if (dim <= 0) throw InvalidArgument("ball_product: dimension must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw InvalidArgument("ball_product: radius must be positive and finite");
  std::vector<int> seen(static_cast<std::size_t>(dim), 0);
  for (const auto *axes : {&ball_axes, &extra_axes}) {
    for (Index a : *axes) {
      if (a <= 0 || a >= dim)
        throw InvalidArgument("ball_product: axis " + std::to_string(a) + " out of range [1, " +
                              std::to_string(dim - 1) + "]");
      ++seen[static_cast<std::size_t>(a)];
    }
  }
  for (Index a = 1; a < dim; ++a) {
    if (seen[static_cast<std::size_t>(a)] != 1)
      throw InvalidArgument("ball_product: axes must partition 1.." + std::to_string(dim - 1) +
                            " (axis " + std::to_string(a) + " used " +
                            std::to_string(seen[static_cast<std::size_t>(a)]) + " times)");
  }
  return StateSpace(dim, BallProduct{std::move(ball_axes), std::move(extra_axes), radius});
}

// ---------------------------------------------------------------------------
// Probe points

/**
 * Points on which linear conditions over the whole space are checked.
 *
 * Polytope: the vertices. BallProduct: every (+-radius axis vector, box
 * vertex) combination followed by `samples` seeded boundary points (unit
 * Gaussian direction scaled to the radius, random box vertex).
 */
inline std::vector<Vector> probe_points(const StateSpace &space, int samples = 200,
                                        std::uint64_t seed = 0) {
  std::vector<Vector> pts;
  if (const auto *poly = space.as_polytope()) {
    for (const auto &v : poly->vertices) pts.push_back(v.vector());
    return pts;
  }
  const auto &bp = *space.as_ball_product();
  const Index dim = space.dim();
  const std::size_t k = bp.extra_axes.size();
  if (k > 20) throw InvalidArgument("probe_points: too many extra axes for box enumeration");
  std::vector<Vector> ball_part;
  if (bp.ball_axes.empty()) {
    ball_part.push_back(Vector::Zero(dim));
  } else {
    for (Index a : bp.ball_axes) {
      for (double sign : {1.0, -1.0}) {
        Vector v = Vector::Zero(dim);
        v[a] = sign * bp.radius;
        ball_part.push_back(v);
      }
    }
  }
  for (const auto &b : ball_part) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      Vector v = b;
      v[0] = 1.0;
      for (std::size_t j = 0; j < k; ++j) v[bp.extra_axes[j]] = (mask >> j) & 1 ? -1.0 : 1.0;
      pts.push_back(v);
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  for (int n = 0; n < samples; ++n) {
    Vector v = Vector::Zero(dim);
    v[0] = 1.0;
    if (!bp.ball_axes.empty()) {
      double norm = 0.0;
      do {
        norm = 0.0;
        for (Index a : bp.ball_axes) {
          v[a] = gauss(rng);
          norm += v[a] * v[a];
        }
        norm = std::sqrt(norm);
      } while (norm < 1e-6);
      for (Index a : bp.ball_axes) v[a] *= bp.radius / norm;
    }
    for (Index a : bp.extra_axes) v[a] = coin(rng) ? 1.0 : -1.0;
    pts.push_back(v);
  }
  return pts;
}

// ---------------------------------------------------------------------------
// Effect validity

struct EffectRange {
  double min = 0.0;
  double max = 0.0;
  Vector argmin;
  Vector argmax;
};

/// Exact range of e.s over the normalised states of the space.
inline EffectRange effect_range(const Effect &e, const StateSpace &space) {
  if (e.dim() != space.dim()) throw DimensionMismatch(space.dim(), e.dim(), "effect_range");
  EffectRange r;
  if (const auto *poly = space.as_polytope()) {
    r.min = std::numeric_limits<double>::infinity();
    r.max = -r.min;
    for (const auto &v : poly->vertices) {
      const double p = e.vector().dot(v.vector());
      if (p < r.min) { r.min = p; r.argmin = v.vector(); }
      if (p > r.max) { r.max = p; r.argmax = v.vector(); }
    }
    return r;
  }
  // e0 + <e_b, b> + <e_w, w> over ball x box is e0 +- (radius ||e_b|| + ||e_w||_1).
  const auto &bp = *space.as_ball_product();
  const Vector &ev = e.vector();
  double eb = 0.0;
  for (Index a : bp.ball_axes) eb += ev[a] * ev[a];
  eb = std::sqrt(eb);
  double ew = 0.0;
  for (Index a : bp.extra_axes) ew += std::abs(ev[a]);
  const double spread = bp.radius * eb + ew;
  r.min = ev[0] - spread;
  r.max = ev[0] + spread;
  r.argmax = Vector::Zero(space.dim());
  r.argmax[0] = 1.0;
  for (Index a : bp.ball_axes) r.argmax[a] = eb > 0.0 ? bp.radius * ev[a] / eb : 0.0;
  if (eb == 0.0 && !bp.ball_axes.empty()) r.argmax[bp.ball_axes.front()] = bp.radius;
  for (Index a : bp.extra_axes) r.argmax[a] = ev[a] >= 0.0 ? 1.0 : -1.0;
  r.argmin = -r.argmax;
  r.argmin[0] = 1.0;
  return r;
}

/// The state witnessing invalidity, or nullopt if 0 <= e.s <= 1 on the space.
inline std::optional<Vector> effect_violation(const Effect &e, const StateSpace &space,
                                              double eps = kDefaultTolerance) {
  const EffectRange r = effect_range(e, space);
  if (r.min < -eps) return r.argmin;
  if (r.max > 1.0 + eps) return r.argmax;
  return std::nullopt;
}

inline bool is_valid_effect(const Effect &e, const StateSpace &space,
                            double eps = kDefaultTolerance) {
  return !effect_violation(e, space, eps).has_value();
}

/// probability() that additionally validates the effect on the ambient space.
inline double probability(const Effect &e, const State &s, const StateSpace &space,
                          double eps = kDefaultTolerance) {
  if (auto w = effect_violation(e, space, eps))
    throw InvalidEffect("effect invalid for state space", *w);
  return probability(e, s, eps);
}

// ---------------------------------------------------------------------------
// Transformations

inline State apply(const Transformation &t, const State &s) {
  if (t.dim() != s.dim()) throw DimensionMismatch(t.dim(), s.dim(), "apply");
  return State(t.matrix() * s.vector());
}

/// apply() for a transformation claimed to be allowed; a non-member image
/// means the theory itself is broken.
inline State apply_checked(const Transformation &t, const State &s, const StateSpace &space,
                           double eps = kDefaultTolerance) {
  State out = apply(t, s);
  if (!is_member(out, space, eps))
    throw InvariantError("transformation.allowed[" + t.label() + "]",
                         format_vector(s.vector()) + " maps to non-member " +
                             format_vector(out.vector()));
  return out;
}

namespace detail {

/// max over ||b|| <= r of ||c + A b||_2, via the secular equation of the
/// equivalent trust-region problem on M = A^T A.
inline double max_affine_norm_on_ball(const Matrix &A, const Vector &c, double r) {
  if (A.cols() == 0) return c.norm();
  const Matrix M = A.transpose() * A;
  const Vector g = A.transpose() * c;
  Eigen::SelfAdjointEigenSolver<Matrix> es(M);
  const Vector lam = es.eigenvalues();  // ascending
  const Vector gq = es.eigenvectors().transpose() * g;
  const Index top = lam.size() - 1;
  const double lmax = lam[top];
  auto value_at = [&](const Vector &bq) {
    return (c + A * (es.eigenvectors() * bq)).norm();
  };
  auto norm_sq = [&](double mu) {
    double acc = 0.0;
    for (Index i = 0; i < lam.size(); ++i) {
      const double d = mu - lam[i];
      acc += gq[i] * gq[i] / (d * d);
    }
    return acc;
  };
  const double scale = std::max(1.0, lmax);
  // Hard case: g has no component along the top eigenspace.
  bool hard = true;
  for (Index i = 0; i < lam.size(); ++i)
    if (lam[i] >= lmax - 1e-12 * scale && std::abs(gq[i]) > 1e-14 * std::max(1.0, g.norm()))
      hard = false;
  if (hard) {
    Vector bq = Vector::Zero(lam.size());
    double partial = 0.0;
    for (Index i = 0; i < lam.size(); ++i) {
      if (lam[i] < lmax - 1e-12 * scale) {
        bq[i] = gq[i] / (lmax - lam[i]);
        partial += bq[i] * bq[i];
      }
    }
    if (partial <= r * r) {
      bq[top] = std::sqrt(r * r - partial);
      return value_at(bq);
    }
  }
  // Stationary points on the sphere satisfy (mu I - M) b = g; the maximiser
  // has mu > lmax, found by bisection on ||b(mu)|| = r.
  double lo = lmax, hi = lmax + g.norm() / r + 1.0;
  while (norm_sq(hi) > r * r) hi = lmax + 2.0 * (hi - lmax);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (norm_sq(mid) > r * r ? lo : hi) = mid;
  }
  Vector bq(lam.size());
  for (Index i = 0; i < lam.size(); ++i) bq[i] = gq[i] / (hi - lam[i]);
  return value_at(bq);
}

}  // namespace detail

/// True iff every state of the space maps into the space.
inline bool is_allowed(const Transformation &t, const StateSpace &space,
                       double eps = kDefaultTolerance) {
  if (t.dim() != space.dim()) throw DimensionMismatch(space.dim(), t.dim(), "is_allowed");
  if (const auto *poly = space.as_polytope()) {
    return std::all_of(poly->vertices.begin(), poly->vertices.end(), [&](const State &v) {
      return is_member(Vector(t.matrix() * v.vector()), space, eps);
    });
  }
  const auto &bp = *space.as_ball_product();
  const Matrix &T = t.matrix();
  const auto nb = static_cast<Index>(bp.ball_axes.size());
  const auto ne = static_cast<Index>(bp.extra_axes.size());
  auto block = [&](const std::vector<Index> &rows, const std::vector<Index> &cols) {
    Matrix B(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        B(static_cast<Index>(i), static_cast<Index>(j)) = T(rows[i], cols[j]);
    return B;
  };
  auto column0 = [&](const std::vector<Index> &rows) {
    Vector c(static_cast<Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) c[static_cast<Index>(i)] = T(rows[i], 0);
    return c;
  };
  // Interval rows: max |c + a.b + d.w| = |c| + r ||a|| + ||d||_1.
  {
    const Matrix a = block(bp.extra_axes, bp.ball_axes);
    const Matrix d = block(bp.extra_axes, bp.extra_axes);
    const Vector c = column0(bp.extra_axes);
    for (Index i = 0; i < ne; ++i) {
      const double reach = std::abs(c[i]) + bp.radius * a.row(i).norm() + d.row(i).cwiseAbs().sum();
      if (reach > 1.0 + eps) return false;
    }
  }
  if (nb == 0) return true;
  // Ball rows: b' = c + A b + D w, maximised over the box vertices w.
  const Matrix A = block(bp.ball_axes, bp.ball_axes);
  const Matrix D = block(bp.ball_axes, bp.extra_axes);
  const Vector c = column0(bp.ball_axes);
  if (ne > 20) throw InvalidArgument("is_allowed: too many extra axes for box enumeration");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ne); ++mask) {
    Vector shift = c;
    for (Index j = 0; j < ne; ++j) shift += ((mask >> j) & 1 ? -1.0 : 1.0) * D.col(j);
    if (detail::max_affine_norm_on_ball(A, shift, bp.radius) > bp.radius + eps) return false;
  }
  return true;
}

/// Inverse matrix if numerically invertible (reciprocal condition >= 1e-12).
inline std::optional<Matrix> checked_inverse(const Matrix &m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0 || sv[sv.size() - 1] / sv[0] < 1e-12) return std::nullopt;
  return Matrix(m.fullPivLu().inverse());
}

inline bool is_reversible(const Transformation &t, const StateSpace &space,
                          double eps = kDefaultTolerance) {
  if (!is_allowed(t, space, eps)) return false;
  const auto inv = checked_inverse(t.matrix());
  if (!inv) return false;
  // The inverse of a normalisation-preserving matrix preserves normalisation
  // up to rounding; re-pin the first row before wrapping it.
  Matrix m = *inv;
  if (max_abs(m.row(0).transpose() - unit_effect(t.dim()).vector()) > eps) return false;
  m.row(0) = unit_effect(t.dim()).vector().transpose();
  return is_allowed(Transformation(std::move(m), t.label() + "^-1"), space, eps);
}

// ---------------------------------------------------------------------------
// Mixing

inline State mix(std::span<const State> states, std::span<const double> weights,
                 double eps = kDefaultTolerance) {
  if (states.empty()) throw InvalidArgument("mix: no states");
  if (states.size() != weights.size())
    throw InvalidArgument("mix: " + std::to_string(states.size()) + " states but " +
                          std::to_string(weights.size()) + " weights");
  const Index d = states.front().dim();
  Vector acc = Vector::Zero(d);
  double total = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != d) throw DimensionMismatch(d, states[i].dim(), "mix");
    if (weights[i] < 0.0 || !std::isfinite(weights[i]))
      throw InvalidArgument("mix: weight " + std::to_string(i) + " is negative or non-finite");
    acc += weights[i] * states[i].vector();
    total += weights[i];
  }
  if (std::abs(total - 1.0) > eps)
    throw InvalidArgument("mix: weights sum to " + std::to_string(total));
  return State(std::move(acc));
}

inline State mix(const std::vector<State> &states, const std::vector<double> &weights,
                 double eps = kDefaultTolerance) {
  return mix(std::span<const State>(states), std::span<const double>(weights), eps);
}

}  // namespace gptlab
