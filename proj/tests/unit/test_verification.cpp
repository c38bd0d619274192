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
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "psdo/parallel.hpp"
#include "psdo/verification.hpp"

namespace psdo {
namespace {

EllipticProblem scalar_reference(int M, double L) {
  EllipticProblem prob;
  prob.model = OperatorModel::from_matrix(Matrix::Identity(1, 1));
  prob.symbol = SymbolSpec::power(2.0);
  prob.t = ScaleParams::isotropic(1, 1.0);
  prob.lambda = 1.0;
  prob.grid = GridSpec(1, M, L);
  return prob;
}

std::vector<MultiIndex> orders_0_1_2() {
  return {MultiIndex(test::v1(0.0)), MultiIndex(test::v1(1.0)), MultiIndex(test::v1(2.0))};
}

TEST(CoerciveRatio, SpotValueFourThirds) {
  const auto prob = scalar_reference(64, 2.0 * kPi);
  const std::vector<int> k = {1};
  const auto f = mode_field(prob.grid, k, Vector::Ones(1));
  const auto u = solve_principal(prob, f);
  const auto set = orders_0_1_2();
  EXPECT_NEAR(coercive_ratio(prob, u, f, set), 4.0 / 3.0, 1e-12);
}

TEST(CoerciveRatio, BoundedAlongPositiveRay) {
  auto prob = scalar_reference(64, 2.0 * kPi);
  const std::vector<int> k = {1};
  const auto f = mode_field(prob.grid, k, Vector::Ones(1));
  const auto set = orders_0_1_2();
  for (double r : {1e1, 1e3, 1e6, 1e9}) {
    prob.lambda = r;
    const double ratio = coercive_ratio(prob, solve_principal(prob, f), f, set);
    // |lambda| / (2 + lambda) (1 + |lambda|^{-1/2} + |lambda|^{-1}) + 1 / (2 + lambda)
    const double expected = r / (2.0 + r) * (1.0 + 1.0 / std::sqrt(r) + 1.0 / r) + 1.0 / (2.0 + r);
    EXPECT_NEAR(ratio, expected, 1e-12);
    EXPECT_LT(ratio, 3.0);
  }
}

TEST(CoerciveRatio, ZeroSolutionAndZeroData) {
  const auto prob = scalar_reference(32, 4.0);
  const auto f = gaussian_field(prob.grid, Vector::Ones(1), 0.5);
  const auto set = orders_0_1_2();
  EXPECT_EQ(coercive_ratio(prob, SampledField(prob.grid, 1), f, set), 0.0);
  EXPECT_PSDO_ERROR(coercive_ratio(prob, f, SampledField(prob.grid, 1), set), ErrorKind::DivisionByZero);
}

TEST(CoercivitySweep, EmptySweepIsNotApplicable) {
  const SectorSweep empty(kPi / 4, {}, {}, {});
  const auto rep = coercivity_sweep(scalar_reference(32, 4.0), empty);
  EXPECT_TRUE(rep.points.empty());
  EXPECT_EQ(rep.verdict, Verdict::not_applicable);
}

TEST(CoercivitySweep, SmallScalarSweepIsFlat) {
  const auto sweep = SectorSweep::standard(kPi / 4, 3, 1.0, 1e2, 3, 1, 1e-2, 1.0, 3);
  VerificationOptions o;
  o.thresholds.flatness = 1.5;
  const auto rep = coercivity_sweep(scalar_reference(256, 16.0), sweep, o);
  EXPECT_EQ(rep.points.size(), 27u);
  EXPECT_EQ(rep.summary.failures, 0u);
  EXPECT_GE(rep.summary.flatness, 1.0);
  EXPECT_LE(rep.summary.flatness, 1.5);
  EXPECT_EQ(rep.verdict, Verdict::pass);
}

TEST(CoercivitySweep, SolverErrorsBecomeFailureRecords) {
  auto prob = scalar_reference(32, 4.0);
  prob.model = OperatorModel::from_matrix(Matrix::Constant(1, 1, -1.0));
  const SectorSweep sweep(0.0, {0.0}, {0.5, 1.0}, {ScaleParams::isotropic(1, 1.0)});
  const auto rep = coercivity_sweep(prob, sweep);
  ASSERT_EQ(rep.points.size(), 2u);
  EXPECT_TRUE(rep.points[0].ok);
  EXPECT_FALSE(rep.points[1].ok);
  EXPECT_NE(rep.points[1].failure.find("ModeSingular"), std::string::npos);
  EXPECT_EQ(rep.summary.failures, 1u);
  EXPECT_EQ(rep.verdict, Verdict::fail);
}

TEST(CoercivitySweep, ThreadCountDoesNotChangeResults) {
  const auto sweep = SectorSweep::standard(kPi / 4, 3, 1.0, 1e3, 4, 1, 1e-3, 1.0, 2);
  VerificationOptions one, many;
  many.threads = 8;
  const auto a = to_json(coercivity_sweep(scalar_reference(128, 16.0), sweep, one)).dump();
  const auto b = to_json(coercivity_sweep(scalar_reference(128, 16.0), sweep, many)).dump();
  EXPECT_EQ(a, b);
}

TEST(ResolventSweep, BoundedOnBoundaryRaysAndAtCap) {
  const auto sweep = SectorSweep::standard(kPi / 4, 3, 1.0, 1e4, 5, 1, 1e-2, 1.0, 3);
  VerificationOptions o;
  o.thresholds.flatness = 2.0;
  const auto rep = resolvent_sweep(scalar_reference(256, 16.0), sweep, o);
  EXPECT_EQ(rep.summary.failures, 0u);
  EXPECT_TRUE(std::isfinite(rep.summary.max_ratio));
  EXPECT_EQ(rep.verdict, Verdict::pass);
  double boundary = 0.0, interior = 0.0, capped = 0.0, uncapped = 0.0;
  for (const auto& p : rep.points) {
    double& side = std::abs(p.ray) > 0.1 ? boundary : interior;
    side = std::max(side, p.ratio);
    double& cap = p.t[0] == 1.0 ? capped : uncapped;
    cap = std::max(cap, p.ratio);
  }
  EXPECT_LT(boundary / interior, 2.0);
  EXPECT_LT(capped / uncapped, 2.0);
}

TEST(ResolventSweep, RejectsLowerTerms) {
  auto prob = scalar_reference(32, 4.0);
  prob.lower_terms.push_back(LowerTerm::constant(MultiIndex(test::v1(1.0)), Matrix::Identity(1, 1)));
  EXPECT_PSDO_ERROR(resolvent_sweep(prob, SectorSweep::standard(0.5, 1, 1.0, 2.0, 2, 1, 0.5, 1.0, 1)),
                    ErrorKind::InvalidArgument);
}

TEST(Rademacher, SingleScaledIdentity) {
  const std::vector<Matrix> ops = {2.0 * Matrix::Identity(2, 2)};
  const std::vector<Vector> vs = {Vector::Unit(2, 0)};
  const auto [num, den] = rademacher_average(ops, vs, 2.0);
  EXPECT_DOUBLE_EQ(num, 2.0);
  EXPECT_DOUBLE_EQ(den, 1.0);
}

TEST(Rademacher, TwoScalarOnes) {
  const std::vector<Matrix> ops = {Matrix::Identity(1, 1), Matrix::Identity(1, 1)};
  const std::vector<Vector> vs = {Vector::Ones(1), Vector::Ones(1)};
  const auto [num, den] = rademacher_average(ops, vs, 1.0);
  EXPECT_DOUBLE_EQ(num, 1.0);
  EXPECT_DOUBLE_EQ(den, 1.0);
}

TEST(Rademacher, IdentityFamilyAndErrors) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  std::vector<Matrix> ops;
  std::vector<Vector> vs;
  for (int j = 0; j < 6; ++j) {
    ops.push_back(Matrix::Identity(3, 3));
    Vector v(3);
    for (int c = 0; c < 3; ++c) v(c) = normal(rng);
    vs.push_back(v);
  }
  for (auto mode : {RademacherMode::enumerate, RademacherMode::montecarlo}) {
    const auto [num, den] = rademacher_average(ops, vs, 3.0, mode, 500);
    EXPECT_EQ(num, den);
  }
  std::vector<Matrix> big(21, Matrix::Identity(1, 1));
  std::vector<Vector> bv(21, Vector::Ones(1));
  EXPECT_PSDO_ERROR(rademacher_average(big, bv, 2.0), ErrorKind::TooManyForEnumeration);
}

TEST(Rbound, SingletonEqualsOperatorNorm) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (int N : {1, 3, 8}) {
    Matrix T(N, N);
    for (int r = 0; r < N; ++r) {
      for (int c = 0; c < N; ++c) {
        const double re = normal(rng);
        const double im = normal(rng);
        T(r, c) = cplx(re, im);
      }
    }
    const std::vector<Matrix> family = {T};
    for (double q : {1.0, 2.0, kInf}) {
      EXPECT_NEAR(estimate_rbound(family, q, 4, 1).value, operator_norm(T, q).lower, 1e-6);
    }
  }
}

TEST(Rbound, ScalarFamilyBracket) {
  std::vector<Matrix> family;
  double S = 0.0;
  for (double lambda : log_space(1e-2, 1e3, 10)) {
    const double v = lambda / (1.0 + lambda);
    family.push_back(Matrix::Constant(1, 1, v));
    S = std::max(S, v);
  }
  const auto est = estimate_rbound(family, 2.0, 10, 1);
  EXPECT_GE(est.value, S - 1e-12);
  EXPECT_LE(est.value, 2.0 * S);
}

TEST(Rbound, ScaledIdentitiesReachTwo) {
  const std::vector<Matrix> family = {Matrix::Identity(2, 2), 2.0 * Matrix::Identity(2, 2)};
  EXPECT_GE(estimate_rbound(family, 2.0, 3, 1).value, 2.0 - 1e-12);
}

TEST(Rbound, AppendingMembersNeverLowersEstimate) {
  std::vector<Matrix> family;
  double previous = 0.0;
  for (int j = 0; j < 6; ++j) {
    Matrix T(2, 2);
    T << 1.0, 0.3 * j, -0.2 * j, 0.5;
    family.push_back(T);
    const double value = estimate_rbound(family, 2.0, 3, 1, 99).value;
    EXPECT_GE(value, previous);
    previous = value;
  }
}

TEST(Kahane, UnitScalars) {
  const std::vector<cplx> a = {1.0, 1.0, 1.0};
  const std::vector<Vector> vs = {Vector::Ones(2), Vector::Unit(2, 0), Vector::Unit(2, 1)};
  const auto r = kahane_contraction_check(a, vs, 2.0);
  EXPECT_NEAR(r.constant, 1.0, 1e-15);
  EXPECT_TRUE(r.pass);
}

TEST(Kahane, RandomRealInstances) {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst = 0.0;
  for (int draw = 0; draw < 1000; ++draw) {
    std::vector<cplx> a;
    std::vector<Vector> vs;
    for (int j = 0; j < 6; ++j) {
      a.push_back(unit(rng));
      Vector v(2);
      v << unit(rng), unit(rng);
      vs.push_back(v);
    }
    const auto r = kahane_contraction_check(a, vs, 2.0);
    EXPECT_TRUE(r.pass);
    worst = std::max(worst, r.constant);
  }
  EXPECT_LE(worst, 1.0 + 1e-12);
}

TEST(Kahane, ImaginaryUnitScalars) {
  const std::vector<cplx> a = {cplx(0, 1), cplx(0, 1)};
  const std::vector<Vector> vs = {Vector::Ones(1), Vector::Ones(1)};
  const auto r = kahane_contraction_check(a, vs, 2.0);
  EXPECT_FALSE(r.real);
  EXPECT_EQ(r.bound, 2.0);
  EXPECT_GE(r.constant, 1.0 - 1e-15);
  EXPECT_LE(r.constant, 2.0);
  std::vector<cplx> many(13, 1.0);
  std::vector<Vector> mv(13, Vector::Ones(1));
  EXPECT_PSDO_ERROR(kahane_contraction_check(many, mv, 2.0), ErrorKind::TooManyForEnumeration);
}

TEST(Multipliers, ScalarSigmaMatchesClosedForm) {
  const auto sweep = SectorSweep::standard(kPi / 4, 3, 1.0, 1e3, 4, 1, 1e-2, 1.0, 3);
  const auto model = OperatorModel::from_matrix(Matrix::Identity(1, 1));
  const std::vector<MultiIndex> betas = {MultiIndex(test::v1(1.0))};
  const auto rep = multiplier_family_check(SymbolSpec::power(2.0), model, sweep, betas);
  const auto samples = multiplier_samples(1);
  ASSERT_EQ(rep.points.size(), sweep.size());
  for (const auto& p : rep.points) {
    ASSERT_TRUE(p.ok) << p.failure;
    const cplx lambda = std::polar(p.radius, p.ray);
    double sigma = 0.0, beta = 0.0;
    for (const auto& xi : samples) {
      const cplx d = 1.0 + lambda + p.t[0] * xi[0] * xi[0];
      sigma = std::max(sigma, 1.0 / std::abs(d));
      beta = std::max(beta, std::abs(xi[0]) * 2.0 * p.t[0] * std::abs(xi[0]) / std::norm(d));
    }
    EXPECT_NEAR(p.detail["sigma"].get<double>(), sigma, 1e-12);
    EXPECT_LE(p.detail["sigma"].get<double>(), 1.0);
    EXPECT_NEAR(p.detail["beta"][0].get<double>(), beta, 1e-6 * beta);
  }
  EXPECT_LE(rep.extra["sigma_sup"].get<double>(), 1.0);
  EXPECT_TRUE(std::isfinite(rep.summary.max_ratio));
  EXPECT_LE(rep.summary.flatness, 2.0);
}

TEST(Multipliers, SampleLayout) {
  const auto s = multiplier_samples(2, 2);
  EXPECT_EQ(s.size(), 4u * 23u);
  EXPECT_NEAR(std::hypot(s[0][0], s[0][1]), 1e-3, 1e-15);
}

TEST(Report, FinalizeAndVerdict) {
  VerificationReport rep;
  rep.thresholds = Thresholds{3.0, 1.5};
  for (double r : {1.0, 2.0, 1.5}) {
    PointRecord p;
    p.index = rep.points.size();
    p.ratio = r;
    rep.points.push_back(p);
  }
  rep.finalize();
  EXPECT_EQ(rep.summary.max_ratio, 2.0);
  EXPECT_EQ(rep.summary.median_ratio, 1.5);
  EXPECT_NEAR(rep.summary.flatness, 4.0 / 3.0, 1e-15);
  EXPECT_EQ(rep.summary.worst_index, 1u);
  EXPECT_EQ(rep.verdict, Verdict::pass);
  rep.thresholds.max_ratio = 1.9;
  rep.finalize();
  EXPECT_EQ(rep.verdict, Verdict::fail);
}

TEST(Report, JsonAndCsvFormats) {
  VerificationReport rep;
  rep.kind = "demo";
  PointRecord p;
  p.ray = 0.5;
  p.radius = 2.0;
  p.t = {0.1, 0.2};
  p.ratio = 1.25;
  p.residual = 1e-15;
  rep.points.push_back(p);
  PointRecord bad;
  bad.index = 1;
  bad.ok = false;
  bad.failure = "ModeSingular: demo";
  bad.ratio = kInf;
  rep.points.push_back(bad);
  rep.finalize();
  const auto j = to_json(rep);
  EXPECT_EQ(j["points"][0]["verdict"], "pass");
  EXPECT_EQ(j["points"][1]["verdict"], "error");
  EXPECT_EQ(j["points"][1]["ratio"], "inf");
  EXPECT_EQ(j["verdict"], "fail");
  std::istringstream csv(to_csv(rep));
  std::string header, row;
  std::getline(csv, header);
  std::getline(csv, row);
  EXPECT_EQ(header, "ray,radius,t,ratio,residual,verdict");
  EXPECT_EQ(row.substr(0, row.find(",1.25")), "0.5,2,0.10000000000000001;0.20000000000000001");
}

TEST(PointRng, DependsOnSeedAndIndexOnly) {
  auto a = point_rng(5, 3);
  auto b = point_rng(5, 3);
  auto c = point_rng(5, 4);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
}

TEST(ParallelFor, VisitsEachIndexOnceAndRethrowsFirst) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, 8, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  try {
    parallel_for(50, 4, [](std::size_t i) {
      if (i == 7 || i == 30) raise(ErrorKind::InvalidArgument, std::to_string(i));
    });
    FAIL() << "expected an exception";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find(": 7"), std::string::npos);
  }
}

}  // namespace
}  // namespace psdo
