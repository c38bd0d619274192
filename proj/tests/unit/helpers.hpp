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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "psdo/errors.hpp"
#include "psdo/types.hpp"

namespace psdo::test {

#define EXPECT_PSDO_ERROR(stmt, expected_kind)                                   \
  do {                                                                            \
    try {                                                                         \
      stmt;                                                                       \
      ADD_FAILURE() << "expected " << ::psdo::to_string(expected_kind);           \
    } catch (const ::psdo::Error& e) {                                            \
      EXPECT_EQ(e.kind(), expected_kind) << e.what();                             \
    }                                                                             \
  } while (0)

inline std::vector<double> v1(double x) { return {x}; }

inline void expect_complex_near(cplx actual, cplx expected, double tol) {
  EXPECT_NEAR(actual.real(), expected.real(), tol);
  EXPECT_NEAR(actual.imag(), expected.imag(), tol);
}

inline double rel_diff(const Matrix& a, const Matrix& b) { return (a - b).norm() / std::max(1e-300, b.norm()); }

}  // namespace psdo::test
