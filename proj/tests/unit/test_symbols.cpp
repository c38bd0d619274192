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
#include "psdo/sweep.hpp"
#include "psdo/symbols.hpp"

namespace psdo {
namespace {

using test::expect_complex_near;

TEST(MultiIndex, OrderIsComponentSum) {
  const MultiIndex a(std::vector<double>{0.5, 2.0, 1.25});
  EXPECT_DOUBLE_EQ(a.order(), 3.75);
  EXPECT_FALSE(a.is_zero());
  EXPECT_TRUE(MultiIndex::zero(3).is_zero());
  EXPECT_TRUE(a.is_even(1));
  EXPECT_FALSE(a.is_even(0));
  EXPECT_EQ((a + MultiIndex::axis(3, 0, 1.5))[0], 2.0);
}

TEST(MultiIndex, RejectsNegativeComponents) {
  EXPECT_PSDO_ERROR(MultiIndex(std::vector<double>{1.0, -0.5}), ErrorKind::InvalidArgument);
}

TEST(Sector, ContainsOriginAndIsConic) {
  const Sector s(kPi / 4);
  EXPECT_TRUE(s.contains({0.0, 0.0}));
  EXPECT_TRUE(s.contains(std::polar(3.0, 0.7)));
  EXPECT_TRUE(s.contains(std::polar(3e6, 0.7)));
  EXPECT_FALSE(s.contains(std::polar(1.0, 0.8)));
  EXPECT_FALSE(s.contains({-1.0, 0.0}));
}

TEST(ScaleParams, EnforcesCap) {
  EXPECT_PSDO_ERROR(ScaleParams({0.5, 2.0}, 1.0), ErrorKind::InvalidArgument);
  EXPECT_PSDO_ERROR(ScaleParams({0.0}, 1.0), ErrorKind::InvalidArgument);
  const ScaleParams t({0.25, 0.04}, 1.0);
  EXPECT_NEAR(t.weight(MultiIndex(std::vector<double>{1.0, 1.0}), 2.0), 0.5 * 0.2, 1e-15);
}

TEST(IXiPower, ClassicalDerivative) {
  expect_complex_near(i_xi_power(test::v1(2.0), MultiIndex(test::v1(1.0))), {0.0, 2.0}, 1e-14);
}

TEST(IXiPower, SecondOrderNegativeFrequency) {
  expect_complex_near(i_xi_power(test::v1(-3.0), MultiIndex(test::v1(2.0))), {-9.0, 0.0}, 1e-13);
}

TEST(IXiPower, HalfOrderBranch) {
  expect_complex_near(i_xi_power(test::v1(1.0), MultiIndex(test::v1(0.5))), std::polar(1.0, kPi / 4), 1e-15);
}

TEST(IXiPower, ZeroFactorVanishes) {
  const std::vector<double> xi = {0.0, 5.0};
  EXPECT_EQ(i_xi_power(xi, MultiIndex(std::vector<double>{1.0, 1.0})), cplx(0.0, 0.0));
  expect_complex_near(i_xi_power(xi, MultiIndex(std::vector<double>{0.0, 1.0})), {0.0, 5.0}, 1e-14);
}

TEST(EvalSymbol, PowerScalar) {
  expect_complex_near(eval_symbol(SymbolSpec::power(2.0), ScaleParams::isotropic(1, 1.0), test::v1(3.0)), {9.0, 0.0},
                      1e-13);
}

TEST(EvalSymbol, PowerAnisotropic) {
  const std::vector<double> xi = {1.0, 1.0};
  expect_complex_near(eval_symbol(SymbolSpec::power(2.0), ScaleParams({1.0, 4.0}, 4.0), xi), {5.0, 0.0}, 1e-13);
}

TEST(EvalSymbol, RotatedPower) {
  expect_complex_near(eval_symbol(SymbolSpec::rotated_power(2.0, kPi / 4), ScaleParams::isotropic(1, 1.0), test::v1(2.0)),
                      std::polar(4.0, kPi / 4), 1e-13);
}

TEST(EvalSymbol, TableOutsideRange) {
  SymbolSpec s;
  s.kind = SymbolKind::user_table;
  s.table.nodes = {-1.0, 0.0, 1.0};
  s.table.values = {1.0, 0.0, 1.0};
  expect_complex_near(eval_symbol(s, ScaleParams::isotropic(1, 0.5), test::v1(0.5)), {0.25, 0.0}, 1e-15);
  EXPECT_PSDO_ERROR(eval_symbol(s, ScaleParams::isotropic(1, 1.0), test::v1(2.0)), ErrorKind::OutOfTable);
}

std::vector<std::vector<double>> xi_grid_1d() {
  std::vector<std::vector<double>> out;
  for (double r : log_space(1e-3, 1e4, 71)) {
    out.push_back({r});
    out.push_back({-r});
  }
  out.push_back({0.0});
  return out;
}

TEST(SymbolClass, PowerFirstDerivativeConstantAtMostTwo) {
  const std::vector<ScaleParams> ts = {ScaleParams::isotropic(1, 1.0)};
  const auto xis = xi_grid_1d();
  const auto betas = binary_multi_indices(1);
  const auto r = check_symbol_class(SymbolSpec::power(2.0), ts, xis, betas);
  ASSERT_EQ(r.bounds.size(), 2u);
  // sup |2 xi| (1 + |xi|) / (1 + |xi|)^2 approaches 2 from below.
  EXPECT_LE(r.bounds[1].constant, 2.0 + 1e-6);
  EXPECT_GT(r.bounds[1].constant, 1.99);
  EXPECT_NEAR(r.lower_margin, 1.0, 1e-12);
  EXPECT_TRUE(r.in_sector);
  EXPECT_TRUE(r.pass);
}

TEST(SymbolClass, NegatedPowerLeavesSector) {
  const std::vector<ScaleParams> ts = {ScaleParams::isotropic(1, 1.0)};
  const auto xis = xi_grid_1d();
  const auto betas = binary_multi_indices(1);
  SymbolSpec s = SymbolSpec::negated_power(2.0);
  s.phi1 = 3.0;
  const auto r = check_symbol_class(s, ts, xis, betas);
  EXPECT_FALSE(r.in_sector);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.worst_argument, kPi, 1e-12);
}

TEST(SymbolClass, JumpTableHasNonFiniteDerivative) {
  SymbolSpec s;
  s.kind = SymbolKind::user_table;
  s.table.nodes = {-10.0, 0.5, 0.5 + 1e-12, 10.0};
  s.table.values = {1.0, 1.0, 50.0, 50.0};
  const std::vector<ScaleParams> ts = {ScaleParams::isotropic(1, 1.0)};
  const std::vector<std::vector<double>> xis = {{2.0}, {0.5}};
  const auto betas = binary_multi_indices(1);
  EXPECT_PSDO_ERROR(check_symbol_class(s, ts, xis, betas), ErrorKind::NonFiniteDerivative);
}

TEST(SectorSum, PositiveRealsGiveOne) { EXPECT_NEAR(sector_sum_constant(0.0, 0.0, 1000), 1.0, 1e-15); }

TEST(SectorSum, QuarterAngles) {
  EXPECT_NEAR(sector_sum_constant(kPi / 4, kPi / 4, 100000), std::cos(kPi / 4), 1e-3);
}

TEST(SectorSum, MixedAngles) {
  EXPECT_NEAR(sector_sum_constant(kPi / 2, kPi / 4, 100000), std::cos(3 * kPi / 8), 1e-3);
}

TEST(SectorSum, AngleSumTooLarge) {
  EXPECT_PSDO_ERROR(sector_sum_constant(kPi / 2, kPi / 2, 100), ErrorKind::AngleSumTooLarge);
}

TEST(SectorSweep, StandardLayout) {
  const auto s = SectorSweep::standard(kPi / 4, 3, 1.0, 1e6, 13, 1, 1e-4, 1.0, 5);
  EXPECT_EQ(s.size(), 3u * 13u * 5u);
  EXPECT_DOUBLE_EQ(s.rays().front(), -kPi / 4);
  EXPECT_DOUBLE_EQ(s.rays()[1], 0.0);
  for (std::size_t i = 1; i < s.radii().size(); ++i) EXPECT_GT(s.radii()[i], s.radii()[i - 1]);
  const SweepPoint p = s.point(5 * 13 + 5 + 2);
  EXPECT_DOUBLE_EQ(p.ray, 0.0);
  EXPECT_NEAR(p.radius, std::sqrt(10.0), 1e-12);
  EXPECT_NEAR(p.t[0], 1e-2, 1e-15);
}

}  // namespace
}  // namespace psdo
