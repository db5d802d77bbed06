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
 * @file quantum_oracle.hpp
 * Hilbert-space cross-checks. This is the only part of the library that uses
 * complex arithmetic; it serves as an independent oracle for the real-vector
 * simulator.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "gptlab/experiments.hpp"
#include "gptlab/theories.hpp"

namespace gptlab::quantum {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline bool is_unitary(const ComplexMatrix &u, double eps = kDefaultTolerance) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= eps;
}

inline double max_abs(const ComplexMatrix &m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Hermitian, unit-trace, positive semi-definite matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix rho, double eps = kDefaultTolerance) : rho_(std::move(rho)) {
    if (rho_.rows() == 0 || rho_.rows() != rho_.cols())
      throw InvalidArgument("DensityMatrix: must be square and non-empty");
    if (max_abs(ComplexMatrix(rho_ - rho_.adjoint())) > eps)
      throw InvariantError("density.hermitian", "rho differs from its adjoint");
    if (std::abs(rho_.trace() - Complex(1.0)) > eps)
      throw InvariantError("density.unit_trace", "trace is " + std::to_string(rho_.trace().real()));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho_);
    if (es.eigenvalues().minCoeff() < -eps)
      throw InvariantError("density.positive", "eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  }

  static DensityMatrix pure(const ComplexVector &psi) {
    const ComplexVector n = psi / psi.norm();
    return DensityMatrix(n * n.adjoint());
  }

  const ComplexMatrix &matrix() const { return rho_; }
  Index dim() const { return rho_.rows(); }

 private:
  ComplexMatrix rho_;
};

inline ComplexMatrix pauli(int k) {
  ComplexMatrix m(2, 2);
  const Complex i(0.0, 1.0);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw InvalidArgument("pauli: index must be 0..3");
  }
  return m;
}

/// Real vector (Tr rho P) over the Pauli strings P of n qubits (first
/// qubit slowest). For one qubit this is the canonical Bloch state (1, x, y, z).
inline Vector pauli_vector(const ComplexMatrix &rho) {
  Index n = 0;
  while ((Index{1} << n) < rho.rows()) ++n;
  if ((Index{1} << n) != rho.rows()) throw InvalidArgument("pauli_vector: dimension is not a power of 2");
  const Index terms = Index{1} << (2 * n);
  Vector out(terms);
  for (Index t = 0; t < terms; ++t) {
    ComplexMatrix p = ComplexMatrix::Ones(1, 1);
    for (Index q = n - 1; q >= 0; --q) {
      const int k = static_cast<int>((t >> (2 * q)) & 3);
      p = Eigen::kroneckerProduct(p, pauli(k)).eval();
    }
    out[t] = (rho * p).trace().real();
  }
  return out;
}

inline Vector bloch_vector(const DensityMatrix &rho) {
  if (rho.dim() != 2) throw InvalidArgument("bloch_vector: expects a qubit");
  return pauli_vector(rho.matrix());
}

/// rho = (1/2)(I + x X + y Y + z Z) from (1, x, y, z).
inline DensityMatrix density_from_bloch(const Vector &v) {
  if (v.size() != 4) throw DimensionMismatch(4, v.size(), "density_from_bloch");
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  for (int k = 0; k < 4; ++k) rho += 0.5 * v[k] * pauli(k);
  return DensityMatrix(rho);
}

/// Partial trace over the second factor of a bipartite (dim_a x dim_b) pure state.
inline ComplexMatrix reduce_first(const ComplexVector &psi, Index dim_a, Index dim_b) {
  ComplexMatrix rho = ComplexMatrix::Zero(dim_a, dim_a);
  for (Index i = 0; i < dim_a; ++i)
    for (Index j = 0; j < dim_a; ++j)
      for (Index k = 0; k < dim_b; ++k) rho(i, j) += psi[i * dim_b + k] * std::conj(psi[j * dim_b + k]);
  return rho;
}

inline ComplexMatrix reduce_second(const ComplexVector &psi, Index dim_a, Index dim_b) {
  ComplexMatrix rho = ComplexMatrix::Zero(dim_b, dim_b);
  for (Index i = 0; i < dim_b; ++i)
    for (Index j = 0; j < dim_b; ++j)
      for (Index k = 0; k < dim_a; ++k) rho(i, j) += psi[k * dim_b + i] * std::conj(psi[k * dim_b + j]);
  return rho;
}

inline ComplexVector random_state(Index dim, std::mt19937_64 &rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) v[i] = Complex(g(rng), g(rng));
  return v / v.norm();
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal folded back into Q.
inline ComplexMatrix random_unitary(Index dim, std::mt19937_64 &rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix z(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) z(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

/// e^{i phi0}|0><0| ⊗ 1 + e^{i phi1}|1><1| ⊗ U.
inline ComplexMatrix controlled(const ComplexMatrix &u, double phi0 = 0.0, double phi1 = 0.0) {
  const Index d = u.rows();
  ComplexMatrix c = ComplexMatrix::Zero(2 * d, 2 * d);
  c.topLeftCorner(d, d) = std::polar(1.0, phi0) * ComplexMatrix::Identity(d, d);
  c.bottomRightCorner(d, d) = std::polar(1.0, phi1) * u;
  return c;
}

inline double controlled_commutator_norm(const ComplexMatrix &u, const ComplexMatrix &v,
                                         double phi0 = 0.0, double phi1 = 0.0,
                                         double psi0 = 0.0, double psi1 = 0.0) {
  const ComplexMatrix uc = controlled(u, phi0, phi1);
  const ComplexMatrix vc = controlled(v, psi0, psi1);
  return max_abs(ComplexMatrix(uc * vc - vc * uc));
}

inline double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a - b);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

// ---------------------------------------------------------------------------
// Phase kick-back

struct KickbackResult {
  double theta = 0.0;
  Vector quantum_control;  // Bloch form of the reduced control state
  Vector gpt_control;      // control_out of the real-vector simulator
  Vector quantum_pair;     // two-qubit Pauli vector of the reduced pair state
  Vector gpt_pair;
  double deviation = 0.0;
  bool pass = false;
};

/// Evolves |+> ⊗ |AB> under |0><0| ⊗ 1 + |1><1| ⊗ S with S|AB> = e^{i theta}|AB>
/// (|AB> a seeded random two-qubit state).
inline ComplexVector kickback_evolve(double theta, const ComplexVector &ab) {
  const Index d = ab.size();
  const ComplexMatrix proj = ab * ab.adjoint();
  const ComplexMatrix swap =
      ComplexMatrix::Identity(d, d) + (std::polar(1.0, theta) - Complex(1.0)) * proj;
  ComplexVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const ComplexVector in = Eigen::kroneckerProduct(plus, ab).eval();
  return controlled(swap) * in;
}

inline KickbackResult kickback_check(double theta, std::uint64_t seed = 0,
                                     double tol = kDefaultTolerance) {
  std::mt19937_64 rng(seed);
  const ComplexVector ab = random_state(4, rng);
  const ComplexVector out = kickback_evolve(theta, ab);

  KickbackResult r;
  r.theta = theta;
  r.quantum_control = bloch_vector(DensityMatrix(reduce_first(out, 2, 4)));
  r.quantum_pair = pauli_vector(reduce_second(out, 2, 4));

  // The same experiment in the real-vector simulator: the control picks up
  // the z-rotation by theta, which lies in the phase group of Z.
  const Theory qubit = qubit_bloch();
  const Transformation rz = bloch_rz(theta, "rz(" + std::to_string(theta) + ")");
  const Vector pair_in = pauli_vector(ab * ab.adjoint());
  SwapExperimentConfig cfg{"Z", ParticleType{rz, particle_kind(rz), rz.label()},
                           State{1.0, 1.0, 0.0, 0.0}, State(pair_in)};
  const SwapExperimentResult sim = run_controlled_swap(qubit, cfg);
  r.gpt_control = sim.control_out.vector();
  r.gpt_pair = sim.pair_out.vector();
  r.deviation = std::max(gptlab::max_abs(r.quantum_control - r.gpt_control),
                         gptlab::max_abs(r.quantum_pair - r.gpt_pair));
  r.pass = r.deviation <= tol;
  return r;
}

// ---------------------------------------------------------------------------
// Controlled commuting operators

struct CommutingCheckResult {
  int trials = 0;
  double max_norm = 0.0;
  double max_base_norm = 0.0;  // ||UV - VU||, should be ~0 by construction
  bool pass = false;
};

/**
 * Per trial: commuting U = W diag(u) W^+, V = W diag(v) W^+ from a seeded
 * random basis W and random eigenphases, random control phases, and the
 * commutator of their controlled versions.
 */
inline CommutingCheckResult commuting_controlled_check(Index dim, int trials, std::uint64_t seed,
                                                       double tol = kDefaultTolerance) {
  if (dim < 2) throw InvalidArgument("commuting_controlled_check: dim must be >= 2");
  if (trials < 1) throw InvalidArgument("commuting_controlled_check: trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  CommutingCheckResult r;
  r.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix w = random_unitary(dim, rng);
    ComplexVector du(dim), dv(dim);
    for (Index i = 0; i < dim; ++i) {
      du[i] = std::polar(1.0, phase(rng));
      dv[i] = std::polar(1.0, phase(rng));
    }
    const ComplexMatrix u = w * du.asDiagonal() * w.adjoint();
    const ComplexMatrix v = w * dv.asDiagonal() * w.adjoint();
    const double p0 = phase(rng), p1 = phase(rng), q0 = phase(rng), q1 = phase(rng);
    r.max_base_norm = std::max(r.max_base_norm, max_abs(ComplexMatrix(u * v - v * u)));
    r.max_norm = std::max(r.max_norm, controlled_commutator_norm(u, v, p0, p1, q0, q1));
  }
  r.pass = r.max_norm <= tol;
  return r;
}

// ---------------------------------------------------------------------------
// Classical control bit

struct ClassicalControlResult {
  double p = 0.0;
  ComplexMatrix boson_out;
  ComplexMatrix fermion_out;
  double max_difference = 0.0;
  bool pass = false;
};

/// Boson (1) vs fermion (sigma_z) phase on rho_c = diag(P, 1 - P).
inline ClassicalControlResult classical_control_check(double p, double tol = 1e-12) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("classical_control_check: P must lie in [0, 1]");
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(0, 0) = p;
  rho(1, 1) = 1.0 - p;
  const ComplexMatrix ub = pauli(0), uf = pauli(3);
  ClassicalControlResult r;
  r.p = p;
  r.boson_out = ub.adjoint() * rho * ub;
  r.fermion_out = uf.adjoint() * rho * uf;
  r.max_difference = max_abs(ComplexMatrix(r.boson_out - r.fermion_out));
  r.pass = r.max_difference <= tol;
  return r;
}

/// The same comparison on the coherent control |+><+|; returns the trace
/// distance between the boson and fermion outputs.
inline double coherent_control_contrast() {
  ComplexVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const ComplexMatrix rho = plus * plus.adjoint();
  const ComplexMatrix ub = pauli(0), uf = pauli(3);
  return trace_distance(ub.adjoint() * rho * ub, uf.adjoint() * rho * uf);
}

}  // namespace gptlab::quantum
