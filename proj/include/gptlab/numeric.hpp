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
 * @file numeric.hpp
 * Shared numeric vocabulary: real vector/matrix aliases, the comparison
 * tolerance, the exception hierarchy and a non-negative least-squares solver
 * used for convex-hull membership.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gptlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Default tolerance for every equality / membership comparison.
inline constexpr double kDefaultTolerance = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(Index expected, Index got, const std::string &what)
      : Error(what + ": dimension mismatch (expected " +
              std::to_string(expected) + ", got " + std::to_string(got) +
              ")") {}
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed to converge or produced a non-finite value.
class NumericError : public Error {
 public:
  NumericError(const std::string &what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// A named theory invariant failed; carries a human-readable witness.
class InvariantError : public Error {
 public:
  InvariantError(std::string invariant, std::string witness)
      : Error("invariant '" + invariant + "' violated: " + witness),
        invariant_(std::move(invariant)),
        witness_(std::move(witness)) {}
  const std::string &invariant() const { return invariant_; }
  const std::string &witness() const { return witness_; }

 private:
  std::string invariant_;
  std::string witness_;
};

inline bool all_finite(const Eigen::Ref<const Matrix> &m) {
  return m.allFinite();
}

inline double max_abs(const Eigen::Ref<const Matrix> &m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool approx_equal(const Eigen::Ref<const Matrix> &a,
                         const Eigen::Ref<const Matrix> &b,
                         double eps = kDefaultTolerance) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         max_abs(a - b) <= eps;
}

inline std::string format_vector(const Eigen::Ref<const Vector> &v) {
  std::ostringstream os;
  os.precision(12);
  os << '(';
  for (Index i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    double x = v[i];
    os << (x == 0.0 ? 0.0 : x);  // no "-0"
  }
  os << ')';
  return os.str();
}

inline Vector make_vector(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline Vector make_vector(const std::vector<double> &xs) {
  return Eigen::Map<const Vector>(xs.data(), static_cast<Index>(xs.size()));
}

inline Matrix make_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  const auto r = static_cast<Index>(rows.size());
  const auto c = r ? static_cast<Index>(rows.begin()->size()) : 0;
  Matrix m(r, c);
  Index i = 0;
  for (const auto &row : rows) {
    if (static_cast<Index>(row.size()) != c)
      throw InvalidArgument("make_matrix: ragged rows");
    Index j = 0;
    for (double x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

struct NnlsResult {
  Vector x;
  double residual = 0.0;  // ||A x - b||_2
  bool converged = false;
  int iterations = 0;
};

/**
 * Lawson-Hanson active-set solver for min ||A x - b||_2 subject to x >= 0.
 *
 * Deterministic for a given input. The outer loop is capped at
 * 3 * cols + 10 iterations; hitting the cap leaves converged == false.
 */
inline NnlsResult nnls(const Eigen::Ref<const Matrix> &A,
                       const Eigen::Ref<const Vector> &b) {
  const Index n = A.cols();
  NnlsResult out;
  out.x = Vector::Zero(n);
  if (n == 0) {
    out.residual = b.norm();
    out.converged = true;
    return out;
  }
  const double scale = std::max(1.0, max_abs(A)) * std::max(1.0, max_abs(b));
  const double dual_tol = 1e-13 * scale * static_cast<double>(A.rows() + n);

  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  // Columns that were just rejected without moving x; skipped until x moves.
  std::vector<bool> stalled(static_cast<std::size_t>(n), false);
  Vector &x = out.x;
  Vector w = A.transpose() * (b - A * x);

  auto solve_passive = [&](Vector &z) {
    std::vector<Index> idx;
    for (Index j = 0; j < n; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    Matrix Ap(A.rows(), static_cast<Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k)
      Ap.col(static_cast<Index>(k)) = A.col(idx[k]);
    Vector zp = Ap.colPivHouseholderQr().solve(b);
    z = Vector::Zero(n);
    for (std::size_t k = 0; k < idx.size(); ++k)
      z[idx[k]] = zp[static_cast<Index>(k)];
  };

  const int max_outer = static_cast<int>(3 * n + 10);
  for (out.iterations = 0; out.iterations < max_outer; ++out.iterations) {
    Index best = -1;
    double best_w = dual_tol;
    for (Index j = 0; j < n; ++j) {
      const auto k = static_cast<std::size_t>(j);
      if (!passive[k] && !stalled[k] && w[j] > best_w) {
        best_w = w[j];
        best = j;
      }
    }
    if (best < 0) {
      out.converged = true;
      break;
    }
    passive[static_cast<std::size_t>(best)] = true;

    Vector z;
    solve_passive(z);
    int inner = 0;
    for (;;) {
      bool feasible = true;
      for (Index j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) feasible = false;
      if (feasible) break;
      if (++inner > 3 * n + 10) break;
      double alpha = std::numeric_limits<double>::infinity();
      for (Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) {
          const double denom = x[j] - z[j];
          if (denom > 0.0) alpha = std::min(alpha, x[j] / denom);
        }
      }
      if (!std::isfinite(alpha)) alpha = 0.0;
      x += alpha * (z - x);
      for (Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x[j] <= 1e-15) {
          passive[static_cast<std::size_t>(j)] = false;
          x[j] = 0.0;
        }
      }
      solve_passive(z);
    }
    Vector next = z.cwiseMax(0.0);
    if (!passive[static_cast<std::size_t>(best)] && next == x) {
      stalled[static_cast<std::size_t>(best)] = true;
    } else {
      std::fill(stalled.begin(), stalled.end(), false);
    }
    x = next;
    w = A.transpose() * (b - A * x);
  }
  out.residual = (A * x - b).norm();
  if (!std::isfinite(out.residual))
    throw NumericError("nnls: non-finite residual", out.residual);
  return out;
}

}  // namespace gptlab
