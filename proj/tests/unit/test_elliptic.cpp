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
#include <random>

#include "helpers.hpp"
#include "psdo/elliptic.hpp"

namespace psdo {
namespace {

EllipticProblem scalar_problem(const GridSpec& g, double a, cplx lambda, double t) {
  EllipticProblem prob;
  Matrix A(1, 1);
  A(0, 0) = a;
  prob.model = OperatorModel::from_matrix(A);
  prob.symbol = SymbolSpec::power(2.0);
  prob.t = ScaleParams::isotropic(static_cast<std::size_t>(g.n), t);
  prob.lambda = lambda;
  prob.grid = g;
  return prob;
}

double max_abs_diff(const SampledField& a, const SampledField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

TEST(SolvePrincipal, DiagonalSystemOnMode) {
  const GridSpec g(1, 32, 2.0 * kPi);
  EllipticProblem prob = scalar_problem(g, 1.0, {2.0, 1.0}, 0.5);
  Matrix A = Matrix::Zero(3, 3);
  A.diagonal() << 1.0, 2.0, 5.0;
  prob.model = OperatorModel::from_matrix(A);
  Vector v(3);
  v << 1.0, cplx(0.0, 2.0), -1.0;
  const std::vector<int> k = {3};
  const auto f = mode_field(g, k, v);
  const auto u = solve_principal(prob, f);
  Vector coeff(3);
  for (int j = 0; j < 3; ++j) coeff(j) = v(j) / (A(j, j) + prob.lambda + 0.5 * 9.0);
  const auto expected = mode_field(g, k, coeff);
  EXPECT_LT(max_abs_diff(u, expected), 1e-13);
}

TEST(SolvePrincipal, ConstantDataAtZeroLambda) {
  const GridSpec g(2, 8, 3.0);
  EllipticProblem prob = scalar_problem(g, 1.0, 0.0, 1.0);
  Matrix A(2, 2);
  A << 2.0, 1.0, 1.0, 2.0;
  prob.model = OperatorModel::from_matrix(A);
  Vector v(2);
  v << 1.0, 4.0;
  SampledField f(g, 2);
  for (std::size_t k = 0; k < g.points(); ++k) f.vector_view(k) = v;
  const auto u = solve_principal(prob, f);
  const Vector expected = A.inverse() * v;
  for (std::size_t k = 0; k < g.points(); ++k) EXPECT_LT((u.vector_view(k) - expected).norm(), 1e-13);
}

TEST(SolvePrincipal, GaussianRoundTrip) {
  const GridSpec g(1, 256, 16.0);
  const auto prob = scalar_problem(g, 1.0, 1.0, 1.0);
  const auto f = gaussian_field(g, Vector::Ones(1), 1.0);
  const auto r = apply_operator(prob, solve_principal(prob, f)) - f;
  EXPECT_LT(lp_lq_norm(r, 2.0) / lp_lq_norm(f, 2.0), 1e-10);
}

TEST(SolvePrincipal, SingularModeRaises) {
  const GridSpec g(1, 16, 2.0 * kPi);
  const auto prob = scalar_problem(g, 1.0, {-2.0, 0.0}, 1.0);
  // a + lambda + xi^2 vanishes at xi = 1.
  EXPECT_PSDO_ERROR(solve_principal(prob, gaussian_field(g, Vector::Ones(1), 0.5)), ErrorKind::ModeSingular);
}

TEST(ApplyOperator, ModeEigenfunction) {
  const GridSpec g(1, 32, 2.0 * kPi);
  auto prob = scalar_problem(g, 1.0, {1.0, -1.0}, 0.25);
  Matrix A(2, 2);
  A << 3.0, 1.0, 0.0, 2.0;
  prob.model = OperatorModel::from_matrix(A);
  Vector v(2);
  v << 1.0, -2.0;
  const std::vector<int> k = {-2};
  const auto out = apply_operator(prob, mode_field(g, k, v));
  const Vector coeff = (0.25 * 4.0 + prob.lambda) * v + A * v;
  EXPECT_LT(max_abs_diff(out, mode_field(g, k, coeff)), 1e-12);
  EXPECT_EQ(lp_lq_norm(apply_operator(prob, SampledField(g, 2)), kInf), 0.0);
}

TEST(ApplyOperator, ConstantLowerTermMatchesFullSymbol) {
  const GridSpec g(1, 64, 2.0 * kPi);
  auto prob = scalar_problem(g, 1.0, 3.0, 0.25);
  const cplx b(0.7, 0.2);
  prob.lower_terms.push_back(LowerTerm::constant(MultiIndex(test::v1(1.0)), Matrix::Constant(1, 1, b)));
  for (int k : {0, 1, -5, 17}) {
    const std::vector<int> kk = {k};
    const auto out = apply_operator(prob, mode_field(g, kk, Vector::Ones(1)));
    const double xi = k;
    const cplx full = 0.25 * xi * xi + cplx(0.0, 1.0) * b * 0.5 * xi + 1.0 + 3.0;
    EXPECT_LT(max_abs_diff(out, mode_field(g, kk, Vector::Constant(1, full))), 1e-11);
  }
}

TEST(SolveFull, NoLowerTermsIsPrincipal) {
  const GridSpec g(1, 64, 8.0);
  const auto prob = scalar_problem(g, 1.0, 2.0, 1.0);
  const auto f = gaussian_field(g, Vector::Ones(1), 0.7);
  const auto rep = solve_full(prob, f);
  EXPECT_EQ(rep.iterations, 1);
  EXPECT_LT(max_abs_diff(rep.u, solve_principal(prob, f)), 1e-15);
}

TEST(SolveFull, MatchesFullSymbolInversion) {
  const GridSpec g(1, 128, 16.0);
  auto prob = scalar_problem(g, 1.0, 100.0, 0.5);
  const double b = 2.0;
  prob.lower_terms.push_back(LowerTerm::constant(MultiIndex(test::v1(1.0)), Matrix::Constant(1, 1, b)));
  const auto f = gaussian_field(g, Vector::Ones(1), 1.0);
  const auto rep = solve_full(prob, f, 1e-13);
  auto f_hat = forward_transform(f);
  for (std::size_t k = 0; k < g.points(); ++k) {
    const double xi = g.frequency_of(k)[0];
    const cplx d = 0.5 * xi * xi + cplx(0.0, b * std::sqrt(0.5) * xi) + 1.0 + 100.0;
    f_hat.at(k, 0) /= g.is_nyquist(static_cast<int>(k)) ? (0.5 * xi * xi + 101.0) : d;
  }
  const auto exact = inverse_transform(f_hat);
  EXPECT_LT(max_abs_diff(rep.u, exact) / lp_lq_norm(exact, kInf), 1e-8);
  EXPECT_LT(rep.contraction, 1.0);
  EXPECT_GT(rep.iterations, 1);
}

TEST(SolveFull, ContractionFailureAtSmallLambda) {
  const GridSpec g(1, 64, 16.0);
  auto prob = scalar_problem(g, 1.0, 1e-2, 1.0);
  prob.lower_terms.push_back(LowerTerm::constant(MultiIndex(test::v1(1.0)), Matrix::Constant(1, 1, 10.0)));
  EXPECT_GE(contraction_estimate(prob).value, 1.0);
  EXPECT_PSDO_ERROR(solve_full(prob, gaussian_field(g, Vector::Ones(1), 1.0)), ErrorKind::ContractionFailure);
}

TEST(SolveFull, NoConvergence) {
  const GridSpec g(1, 64, 16.0);
  auto prob = scalar_problem(g, 1.0, 10.0, 1.0);
  prob.lower_terms.push_back(LowerTerm::constant(MultiIndex(test::v1(1.0)), Matrix::Constant(1, 1, 3.0)));
  EXPECT_PSDO_ERROR(solve_full(prob, gaussian_field(g, Vector::Ones(1), 1.0), 1e-14, 2), ErrorKind::NoConvergence);
}

TEST(SolveFull, VariableCoefficients) {
  const GridSpec g(1, 128, 16.0);
  auto prob = scalar_problem(g, 1.0, 50.0, 1.0);
  std::vector<Matrix> field;
  for (std::size_t k = 0; k < g.points(); ++k) {
    field.push_back(Matrix::Constant(1, 1, 1.0 + 0.5 * std::cos(2.0 * kPi * g.coordinate(static_cast<int>(k)) / g.L)));
  }
  prob.lower_terms.push_back(LowerTerm::field(MultiIndex(test::v1(1.0)), std::move(field)));
  const auto f = gaussian_field(g, Vector::Ones(1), 1.0);
  const auto rep = solve_full(prob, f, 1e-11);
  const auto r = apply_operator(prob, rep.u) - f;
  EXPECT_LT(lp_lq_norm(r, 2.0) / lp_lq_norm(f, 2.0), 1e-11);
  for (std::size_t i = 1; i < rep.history.size(); ++i) EXPECT_LT(rep.history[i], rep.history[i - 1]);
}

TEST(Contraction, ZeroWithoutLowerTerms) {
  const GridSpec g(1, 32, 8.0);
  EXPECT_EQ(contraction_estimate(scalar_problem(g, 1.0, 1.0, 1.0)).value, 0.0);
}

TEST(Contraction, MatchesAnalyticLatticeSup) {
  const GridSpec g(1, 128, 16.0);
  auto prob = scalar_problem(g, 1.0, 4.0, 0.25);
  const double b = 1.5;
  prob.lower_terms.push_back(LowerTerm::constant(MultiIndex(test::v1(1.0)), Matrix::Constant(1, 1, b)));
  double sup = 0.0;
  for (int j = 0; j < g.M; ++j) {
    if (g.is_nyquist(j)) continue;
    const double xi = g.frequency(j);
    sup = std::max(sup, b * 0.5 * std::abs(xi) / (1.0 + 4.0 + 0.25 * xi * xi));
  }
  EXPECT_NEAR(contraction_estimate(prob).value, sup, 0.05 * sup);
  EXPECT_NEAR(contraction_estimate(prob).value, sup, 1e-12);
}

TEST(Contraction, DecreasesAlongRay) {
  const GridSpec g(1, 64, 16.0);
  auto prob = scalar_problem(g, 1.0, 1.0, 1.0);
  prob.lower_terms.push_back(LowerTerm::constant(MultiIndex(test::v1(1.0)), Matrix::Constant(1, 1, 2.0)));
  double previous = kInf;
  for (double r : {1.0, 10.0, 100.0, 1000.0}) {
    prob.lambda = std::polar(r, kPi / 6);
    const double value = contraction_estimate(prob).value;
    EXPECT_LT(value, previous);
    previous = value;
  }
}

TEST(GraphNorm, SingleModeClosedForm) {
  const GridSpec g(1, 32, 2.0 * kPi);
  const auto prob = scalar_problem(g, 1.0, 7.0, 1.0);
  const std::vector<int> k = {1};
  const auto rep = graph_norm(prob, mode_field(g, k, Vector::Ones(1)));
  const double vol = std::sqrt(2.0 * kPi);
  EXPECT_NEAR(rep.graph, 3.0 * vol, 1e-12);
  EXPECT_NEAR(rep.sobolev, 5.0 * vol, 1e-12);
  EXPECT_NEAR(rep.ratio, 5.0 / 3.0, 1e-12);
}

TEST(GraphNorm, ZeroField) {
  const GridSpec g(1, 16, 4.0);
  const auto rep = graph_norm(scalar_problem(g, 1.0, 1.0, 1.0), SampledField(g, 1));
  EXPECT_EQ(rep.graph, 0.0);
  EXPECT_EQ(rep.sobolev, 0.0);
  EXPECT_EQ(rep.ratio, 1.0);
}

TEST(GraphNorm, BracketOverRandomFields) {
  const GridSpec g(1, 128, 16.0);
  const auto prob = scalar_problem(g, 1.0, 1.0, 1.0);
  std::mt19937_64 rng(42);
  double lo = kInf, hi = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double r = graph_norm(prob, random_band_limited(g, 1, 16, rng)).ratio;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi / lo, 20.0);
}

TEST(IndexSet, IntegerOrder) {
  const auto set = default_index_set(2, 2.0);
  EXPECT_EQ(set.size(), 6u);
  for (const auto& a : set) EXPECT_LE(a.order(), 2.0);
}

TEST(IndexSet, FractionalOrder) {
  const auto set = default_index_set(2, 1.5);
  EXPECT_EQ(set.size(), 5u);
  EXPECT_TRUE(set.front().is_zero());
}

TEST(AngleHypotheses, Violations) {
  EXPECT_PSDO_ERROR(check_angle_hypotheses(kPi / 2, kPi / 2, 3.0), ErrorKind::AngleSumTooLarge);
  EXPECT_PSDO_ERROR(check_angle_hypotheses(kPi / 4, kPi / 4, kPi / 3), ErrorKind::Validation);
  check_angle_hypotheses(kPi / 4, kPi / 4, kPi / 2);
  EXPECT_PSDO_ERROR(certify_angles(OperatorModel::from_matrix(Matrix::Constant(1, 1, -1.0)), 0.0, kPi / 4, kPi / 2),
                    ErrorKind::Validation);
}

TEST(ShiftedSolver, RoutesAgree) {
  Matrix A(3, 3);
  A << 4, 1, 0, 0.5, 3, 1, 0, 0.2, 2;
  const auto model = OperatorModel::from_matrix(A);
  const ShiftedSolver eig(model);
  const ShiftedSolver lu(model, 1.0);
  EXPECT_TRUE(eig.eigen_route());
  EXPECT_FALSE(lu.eigen_route());
  const cplx s(1.0, 2.0);
  EXPECT_LT(test::rel_diff(eig.inverse(s), lu.inverse(s)), 1e-13);
  EXPECT_LT(test::rel_diff(eig.inverse(s), (A + s * Matrix::Identity(3, 3)).inverse()), 1e-13);
}

TEST(EllipticProblem, RejectsLowerTermAtFullOrder) {
  const GridSpec g(1, 16, 4.0);
  auto prob = scalar_problem(g, 1.0, 1.0, 1.0);
  prob.lower_terms.push_back(LowerTerm::constant(MultiIndex(test::v1(2.0)), Matrix::Identity(1, 1)));
  EXPECT_PSDO_ERROR(prob.validate(), ErrorKind::InvalidArgument);
}

}  // namespace
}  // namespace psdo
