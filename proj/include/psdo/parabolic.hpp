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
#include <vector>

#include "psdo/elliptic.hpp"
#include "psdo/spaces.hpp"

namespace psdo {

/// du/dy + P_t(D) u + A u = f(y, x), u(0, x) = 0 on [0, Y].
struct ParabolicProblem {
  EllipticProblem elliptic;  ///< lambda = 0, no lower terms
  SpaceTimeField forcing;    ///< slices at y_j = j dy, j = 0..J
  double phi = 2.0 * kPi / 3.0;  ///< positivity angle of A, must exceed pi/2

  void validate() const;
  /// Positivity certificate of A at angle phi. Throws Validation on failure.
  PositivityCertificate certify() const;
};

/// Samples g(y_j) w(x) for j = 0..J on [0, Y].
SpaceTimeField separable_forcing(const SampledField& w, const std::function<double(double)>& g, double Y, int J,
                                 double p = 2.0, double p1 = 2.0);

/// Exact per-mode propagation in the eigenbasis of A with exponential-integrator
/// weights for piecewise-linear forcing.
SpaceTimeField solve_duhamel(const ParabolicProblem& prob);

/// u_{j+1} = (I + dy G(xi))^-1 (u_j + dy f_{j+1}) per mode.
SpaceTimeField solve_implicit_euler(const ParabolicProblem& prob);

/// (||du/dy|| + ||P_t(D) u|| + ||A u||) / ||f|| in the mixed norm. Time
/// derivative by second-order differences. Throws DivisionByZero for f = 0.
double parabolic_coercive_ratio(const ParabolicProblem& prob, const SpaceTimeField& u);

/// e^{-y G(xi)} at every spectral index.
std::vector<Matrix> semigroup_propagator(const ParabolicProblem& prob, double y);

/// phi_1(z) = (e^z - 1) / z and phi_2(z) = (e^z - 1 - z) / z^2.
cplx phi1(cplx z);
cplx phi2(cplx z);

}  // namespace psdo
