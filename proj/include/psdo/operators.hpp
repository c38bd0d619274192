/* Copyright (C) 2026 The psdo authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "psdo/sweep.hpp"
#include "psdo/types.hpp"

namespace psdo {

struct EigenCache {
  Vector values;
  Matrix vectors;
  Matrix inverse;
  double condition = kInf;  ///< kappa_2(V)
};

/// Finite-dimensional realization of the operator A acting on C^N with the
/// l_q norm. Immutable after construction; the eigen-decomposition is
/// computed eagerly so concurrent reads are safe.
class OperatorModel {
 public:
  OperatorModel() = default;

  static OperatorModel from_matrix(Matrix A, double q = 2.0);

  int dimension() const noexcept { return static_cast<int>(matrix_.rows()); }
  double q() const noexcept { return q_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  const EigenCache& eigen() const noexcept { return eigen_; }

  bool symmetric() const noexcept { return symmetric_; }
  /// All eigenvalues real and strictly positive.
  bool positive_definite() const noexcept { return positive_definite_; }
  /// Orthonormal eigenbasis (real symmetric A).
  bool normal() const noexcept { return eigen_.condition == 1.0; }
  bool diagonalizable(double max_condition = 1e6) const noexcept { return eigen_.condition < max_condition; }
  /// min Re(mu) over the spectrum; equals C0 for symmetric positive-definite A.
  double min_eigenvalue() const;
  /// ||A||_2
  double spectral_norm() const noexcept { return spectral_norm_; }

  OperatorModel with_q(double q) const;

 private:
  Matrix matrix_;
  double q_ = 2.0;
  EigenCache eigen_;
  bool symmetric_ = false;
  bool positive_definite_ = false;
  double spectral_norm_ = 0.0;
};

/// (A + lambda I)^{-1}. Throws SpectrumHit when -lambda is within
/// 1e-12 ||A|| of the spectrum or the solve residual exceeds 1e-10.
Matrix resolvent(const OperatorModel& model, cplx lambda);

struct NormBracket {
  double lower = 0.0;
  double upper = 0.0;
  bool exact() const { return lower == upper; }
};

/// ||T||_{l_q -> l_q}: exact for q in {1, 2, inf}; otherwise a bracket whose
/// lower end comes from a nonlinear power iteration and whose upper end comes
/// from Riesz-Thorin interpolation between the exact exponents.
NormBracket operator_norm(const Matrix& T, double q);

/// A unit l_q vector x with ||T x||_q equal to operator_norm(T, q).lower.
Vector norm_maximizer(const Matrix& T, double q);

struct PositivityCertificate {
  double angle = 0.0;
  double constant = kInf;  ///< max over the sweep of (1 + |lambda|) ||(A + lambda)^{-1}||_q
  cplx worst_lambda{0.0, 0.0};
  std::size_t points = 0;
  bool ok = false;
  std::string failure;
};

PositivityCertificate check_positivity(const OperatorModel& model, double phi, const SectorSweep& sweep);

/// V diag(mu_j^theta) V^{-1} with the principal branch.
Matrix fractional_power(const OperatorModel& model, double theta);

/// Symmetric positive-definite coefficient matrix of a coupled system.
OperatorModel build_system(const RealMatrix& a, double q = 2.0);

RealMatrix tridiagonal(int N, double lower, double diagonal, double upper);

struct BvpSpec {
  int points = 64;  ///< mu-points on [0, length] including both ends
  double length = kPi;
  std::function<double(double)> b2 = [](double) { return 1.0; };
  std::function<double(double)> b1 = [](double) { return 0.0; };
  std::function<double(double)> b0 = [](double) { return 0.0; };
  double q = 2.0;
};

/// Central-difference matrix of -b2 u'' + b1 u' + b0 u with homogeneous
/// Dirichlet ends eliminated; dimension points - 2.
OperatorModel build_bvp_operator(const BvpSpec& spec);

}  // namespace psdo
