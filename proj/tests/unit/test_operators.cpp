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
#include <cmath>

#include "helpers.hpp"
#include "psdo/operators.hpp"
#include "psdo/spaces.hpp"
#include "psdo/sweep.hpp"

namespace psdo {
namespace {

using test::rel_diff;

Matrix mat2(cplx a, cplx b, cplx c, cplx d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

TEST(Resolvent, Diagonal) {
  const auto model = OperatorModel::from_matrix(mat2(1, 0, 0, 2));
  EXPECT_LT(rel_diff(resolvent(model, 1.0), mat2(0.5, 0, 0, 1.0 / 3.0)), 1e-14);
}

TEST(Resolvent, SymmetricAtZero) {
  const auto model = OperatorModel::from_matrix(mat2(2, 1, 1, 2));
  EXPECT_LT(rel_diff(resolvent(model, 0.0), mat2(2, -1, -1, 2) / 3.0), 1e-14);
}

TEST(Resolvent, SpectrumHit) {
  const auto model = OperatorModel::from_matrix(mat2(1, 0, 0, 2));
  EXPECT_PSDO_ERROR(resolvent(model, -2.0), ErrorKind::SpectrumHit);
}

TEST(OperatorNorm, Identity) {
  for (double q : {1.0, 1.5, 2.0, 3.0, kInf}) {
    const auto b = operator_norm(Matrix::Identity(3, 3), q);
    EXPECT_NEAR(b.lower, 1.0, 1e-12);
    EXPECT_NEAR(b.upper, 1.0, 1e-12);
  }
}

TEST(OperatorNorm, DiagonalIndependentOfQ) {
  for (double q : {1.0, 1.25, 2.0, 4.0, kInf}) {
    const auto b = operator_norm(mat2(1, 0, 0, 2), q);
    EXPECT_NEAR(b.lower, 2.0, 1e-9);
    EXPECT_NEAR(b.upper, 2.0, 1e-12);
  }
}

TEST(OperatorNorm, NilpotentSingularValue) {
  const auto b = operator_norm(mat2(0, 1, 0, 0), 2.0);
  EXPECT_TRUE(b.exact());
  EXPECT_NEAR(b.lower, 1.0, 1e-14);
}

TEST(OperatorNorm, BracketOrdered) {
  const Matrix T = mat2({1, 2}, -3, {0.5, 0}, {0, 4});
  for (double q : {1.3, 2.7, 6.0}) {
    const auto b = operator_norm(T, q);
    EXPECT_LE(b.lower, b.upper * (1 + 1e-12));
    const Vector x = norm_maximizer(T, q);
    EXPECT_NEAR(vector_norm(x, q), 1.0, 1e-12);
  }
}

SectorSweep positivity_sweep(double phi) {
  std::vector<double> radii = {0.0};
  for (double r : log_space(1e-3, 1e4, 141)) radii.push_back(r);
  return SectorSweep(phi, phi > 0 ? std::vector<double>{-phi, 0.0, phi} : std::vector<double>{0.0}, radii,
                     {ScaleParams::isotropic(1, 1.0)});
}

TEST(Positivity, IdentityOnPositiveAxis) {
  const auto cert = check_positivity(OperatorModel::from_matrix(Matrix::Identity(1, 1)), 0.0, positivity_sweep(0.0));
  EXPECT_TRUE(cert.ok);
  EXPECT_NEAR(cert.constant, 1.0, 1e-14);
}

TEST(Positivity, IdentityRightAngle) {
  const auto cert =
      check_positivity(OperatorModel::from_matrix(Matrix::Identity(1, 1)), kPi / 2, positivity_sweep(kPi / 2));
  EXPECT_TRUE(cert.ok);
  EXPECT_NEAR(cert.constant, std::sqrt(2.0), 1e-12);
}

TEST(Positivity, SymmetricMatchesEigenOracle) {
  const auto sweep = positivity_sweep(kPi / 2);
  const auto cert = check_positivity(OperatorModel::from_matrix(mat2(2, 1, 1, 2)), kPi / 2, sweep);
  double oracle = 0.0;
  for (double ray : sweep.rays()) {
    for (double r : sweep.radii()) {
      const cplx lambda = std::polar(r, ray);
      const double dist = std::min(std::abs(1.0 + lambda), std::abs(3.0 + lambda));
      oracle = std::max(oracle, (1.0 + r) / dist);
    }
  }
  EXPECT_TRUE(cert.ok);
  EXPECT_NEAR(cert.constant, oracle, 1e-12);
}

TEST(Positivity, PropagatesSpectrumHit) {
  const auto cert = check_positivity(OperatorModel::from_matrix(mat2(-1, 0, 0, 2)), 0.0, positivity_sweep(0.0));
  EXPECT_FALSE(cert.ok);
  EXPECT_NE(cert.failure.find("SpectrumHit"), std::string::npos);
}

TEST(FractionalPower, DiagonalSquareRoot) {
  const auto model = OperatorModel::from_matrix(mat2(4, 0, 0, 9));
  EXPECT_LT(rel_diff(fractional_power(model, 0.5), mat2(2, 0, 0, 3)), 1e-14);
}

TEST(FractionalPower, EndpointsAreIdentityAndA) {
  const Matrix A = mat2(3, 1, 0.5, 2);
  const auto model = OperatorModel::from_matrix(A);
  EXPECT_LT(rel_diff(fractional_power(model, 0.0), Matrix::Identity(2, 2)), 1e-12);
  EXPECT_LT(rel_diff(fractional_power(model, 1.0), A), 1e-12);
}

TEST(FractionalPower, SymmetricSquareRoot) {
  const auto model = OperatorModel::from_matrix(mat2(2, 1, 1, 2));
  const Matrix R = fractional_power(model, 0.5);
  Matrix V(2, 2);
  V << 1, 1, -1, 1;
  V /= std::sqrt(2.0);
  Matrix D = Matrix::Zero(2, 2);
  D(0, 0) = 1.0;
  D(1, 1) = std::sqrt(3.0);
  EXPECT_LT(rel_diff(R, V * D * V.adjoint()), 1e-13);
  EXPECT_LT(rel_diff(R * R, model.matrix()), 1e-13);
}

TEST(FractionalPower, Errors) {
  EXPECT_PSDO_ERROR(fractional_power(OperatorModel::from_matrix(mat2(1, 1, 0, 1)), 0.5), ErrorKind::NotDiagonalizable);
  EXPECT_PSDO_ERROR(fractional_power(OperatorModel::from_matrix(mat2(-1, 0, 0, 1)), 0.5), ErrorKind::SpectrumNotSectorial);
}

TEST(BuildSystem, TwoByTwo) {
  RealMatrix a(2, 2);
  a << 2, 1, 1, 2;
  const auto model = build_system(a);
  EXPECT_NEAR(model.min_eigenvalue(), 1.0, 1e-14);
  EXPECT_TRUE(model.symmetric());
  EXPECT_TRUE(model.positive_definite());
}

TEST(BuildSystem, Errors) {
  RealMatrix indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  EXPECT_PSDO_ERROR(build_system(indefinite), ErrorKind::NotPositiveDefinite);
  RealMatrix skew(2, 2);
  skew << 1, 2, 0, 1;
  EXPECT_PSDO_ERROR(build_system(skew), ErrorKind::NotSymmetric);
}

TEST(BuildSystem, TridiagonalConstant) {
  const auto model = build_system(tridiagonal(8, -1.0, 2.0, -1.0));
  const double c0 = 2.0 * (1.0 - std::cos(kPi / 9.0));
  EXPECT_NEAR(model.min_eigenvalue(), c0, 1e-12);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(tridiagonal(8, -1.0, 2.0, -1.0));
  EXPECT_NEAR(model.min_eigenvalue(), es.eigenvalues()(0), 1e-12);
}

TEST(Bvp, DirichletLaplacianLowestEigenvalue) {
  BvpSpec spec;
  spec.points = 64;
  const auto model = build_bvp_operator(spec);
  EXPECT_EQ(model.dimension(), 62);
  const double h = kPi / 63.0;
  EXPECT_NEAR(model.min_eigenvalue(), 2.0 * (1.0 - std::cos(h)) / (h * h), 1e-10);
  EXPECT_NEAR(model.min_eigenvalue(), 1.0, 1e-3);
}

TEST(Bvp, ConstantPotentialShiftsSpectrum) {
  BvpSpec spec;
  spec.points = 20;
  const auto base = build_bvp_operator(spec);
  spec.b0 = [](double) { return 2.5; };
  const auto shifted = build_bvp_operator(spec);
  EXPECT_NEAR(shifted.min_eigenvalue() - base.min_eigenvalue(), 2.5, 1e-12);
  EXPECT_LT(rel_diff(shifted.matrix() - base.matrix(), 2.5 * Matrix::Identity(18, 18)), 1e-14);
}

TEST(Bvp, SingleInteriorPoint) {
  BvpSpec spec;
  spec.points = 3;
  spec.length = 0.8;
  const auto model = build_bvp_operator(spec);
  ASSERT_EQ(model.dimension(), 1);
  EXPECT_NEAR(model.matrix()(0, 0).real(), 2.0 / (0.4 * 0.4), 1e-12);
}

TEST(Bvp, EllipticityFailure) {
  BvpSpec spec;
  spec.b2 = [](double x) { return x - 1.0; };
  EXPECT_PSDO_ERROR(build_bvp_operator(spec), ErrorKind::EllipticityFailure);
}

TEST(OperatorModel, Flags) {
  const auto model = OperatorModel::from_matrix(mat2(2, 1, 1, 2), 3.0);
  EXPECT_TRUE(model.symmetric());
  EXPECT_TRUE(model.normal());
  EXPECT_DOUBLE_EQ(model.q(), 3.0);
  EXPECT_DOUBLE_EQ(model.with_q(1.0).q(), 1.0);
  EXPECT_NEAR(model.spectral_norm(), 3.0, 1e-14);
  const auto skew = OperatorModel::from_matrix(mat2(1, 5, 0, 2));
  EXPECT_FALSE(skew.symmetric());
  EXPECT_TRUE(skew.positive_definite());
  EXPECT_GT(skew.eigen().condition, 1.0);
}

}  // namespace
}  // namespace psdo
