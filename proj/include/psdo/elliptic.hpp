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

#include <cstdint>
#include <vector>

#include "psdo/operators.hpp"
#include "psdo/spaces.hpp"
#include "psdo/symbols.hpp"
#include "psdo/types.hpp"

namespace psdo {

/// Lower-order term t(alpha) A_alpha(x) D^alpha u.
struct LowerTerm {
  MultiIndex alpha;
  std::vector<Matrix> coefficients;  ///< one entry (constant) or one per grid point

  static LowerTerm constant(MultiIndex alpha, Matrix coefficient);
  static LowerTerm field(MultiIndex alpha, std::vector<Matrix> coefficients);

  bool is_constant() const noexcept { return coefficients.size() == 1; }
  const Matrix& at(std::size_t point) const { return coefficients[is_constant() ? 0 : point]; }
};

/// P_t(D) u + A u + sum t(alpha) A_alpha(x) D^alpha u + lambda u = f on a periodic grid.
struct EllipticProblem {
  OperatorModel model;
  SymbolSpec symbol;
  ScaleParams t;
  cplx lambda{1.0, 0.0};
  GridSpec grid;
  double p = 2.0;
  std::vector<LowerTerm> lower_terms;

  void validate() const;
  int components() const { return model.dimension(); }
};

/// Applies (A + s I)^{-1} for scalar shifts s. Uses the eigenbasis of A when
/// it is well conditioned and a per-call LU otherwise.
class ShiftedSolver {
 public:
  explicit ShiftedSolver(const OperatorModel& model, double max_condition = 1e4);

  bool eigen_route() const noexcept { return eigen_route_; }
  Vector solve(cplx shift, const Vector& rhs) const;
  Matrix inverse(cplx shift) const;

 private:
  void check_shift(cplx shift) const;

  OperatorModel model_;
  bool eigen_route_;
};

/// P_t(xi) at every spectral index of the grid.
std::vector<cplx> symbol_on_grid(const SymbolSpec& symbol, const ScaleParams& t, const GridSpec& grid);

/// u = F^-1 [A + lambda + P_t(xi)]^-1 F f. Lower terms are ignored.
SampledField solve_principal(const EllipticProblem& prob, const SampledField& f);

/// L_t u = sum t(alpha) A_alpha(x) D^alpha u.
SampledField apply_lower_terms(const EllipticProblem& prob, const SampledField& u);

/// Full left-hand side including lower terms.
SampledField apply_operator(const EllipticProblem& prob, const SampledField& u);

struct ContractionEstimate {
  double value = 0.0;
  std::size_t probes = 0;
};

/// Empirical norm of L_t (O_t + lambda)^-1 on L_p(l_q): random band-limited
/// probes plus single-mode probes on the non-Nyquist lattice.
ContractionEstimate contraction_estimate(const EllipticProblem& prob, std::uint64_t seed = 0x5eedULL,
                                         std::size_t random_probes = 64);

struct FullSolveReport {
  SampledField u;
  int iterations = 0;
  double residual = 0.0;
  double contraction = 0.0;
  std::vector<double> history;  ///< relative residual after each iteration
};

/// Neumann iteration u_{k+1} = solve_principal(f - L_t u_k).
FullSolveReport solve_full(const EllipticProblem& prob, const SampledField& f, double tol = 1e-9,
                           int max_iter = 200);

struct GraphNormReport {
  double graph = 0.0;    ///< ||(O_t + 1) u||
  double sobolev = 0.0;  ///< h_m_pt norm with the A-part
  double ratio = 1.0;    ///< sobolev / graph, 1 when both vanish
};

GraphNormReport graph_norm(const EllipticProblem& prob, const SampledField& u);

/// Integer m: {alpha in Z_+^n : |alpha| <= m}. Otherwise {0, m e_k, (m/2) e_k}.
std::vector<MultiIndex> default_index_set(std::size_t n, double m);

/// Throws AngleSumTooLarge when phi1 + phi2 >= pi and Validation when
/// phi1 + phi2 exceeds the operator angle phi.
void check_angle_hypotheses(double phi1, double phi2, double phi);

/// Positivity of A at angle phi1 + phi2 on a coarse ray/radius sweep.
/// Throws Validation when the certificate fails.
PositivityCertificate certify_angles(const OperatorModel& model, double phi1, double phi2, double phi);

}  // namespace psdo
