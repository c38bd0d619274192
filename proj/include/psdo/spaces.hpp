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

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "psdo/symbols.hpp"
#include "psdo/types.hpp"

namespace psdo {

/// Periodized uniform grid on [-L/2, L/2)^n with M points per axis.
/// Axis index j maps to wavenumber j for j < M/2 and j - M otherwise, so
/// the unpaired Nyquist index j = M/2 carries wavenumber -M/2.
struct GridSpec {
  int n = 1;
  int M = 64;
  double L = 2.0 * kPi;

  GridSpec() = default;
  GridSpec(int n, int M, double L);

  void validate() const;

  std::size_t points() const;
  double spacing() const { return L / M; }
  double cell_volume() const;
  double volume() const;

  int wavenumber(int j) const { return j < M / 2 ? j : j - M; }
  int index_of_wavenumber(int k) const { return k >= 0 ? k : k + M; }
  bool is_nyquist(int j) const { return j == M / 2; }
  double frequency(int j) const { return 2.0 * kPi * wavenumber(j) / L; }
  double coordinate(int j) const { return -0.5 * L + j * spacing(); }

  /// Row-major flattening, last axis fastest.
  void unflatten(std::size_t flat, std::span<int> index) const;
  std::size_t flatten(std::span<const int> index) const;
  std::vector<double> frequency_of(std::size_t flat) const;
  std::vector<double> coordinate_of(std::size_t flat) const;
  bool touches_nyquist(std::size_t flat) const;

  bool operator==(const GridSpec&) const = default;
};

enum class Domain { physical, spectral };

/// Complex N-vector samples on a grid. Values are stored point-major:
/// values[point * N + component].
class SampledField {
 public:
  SampledField() = default;
  SampledField(GridSpec grid, int components, double q = 2.0, Domain domain = Domain::physical);

  const GridSpec& grid() const noexcept { return grid_; }
  int components() const noexcept { return components_; }
  double q() const noexcept { return q_; }
  Domain domain() const noexcept { return domain_; }
  std::size_t points() const noexcept { return grid_.points(); }

  void set_q(double q);
  void set_domain(Domain d) noexcept { domain_ = d; }

  cplx& at(std::size_t point, int component) { return values_[point * components_ + component]; }
  cplx at(std::size_t point, int component) const { return values_[point * components_ + component]; }

  std::span<cplx> values() noexcept { return values_; }
  std::span<const cplx> values() const noexcept { return values_; }
  std::span<const cplx> vector_at(std::size_t point) const {
    return {values_.data() + point * components_, static_cast<std::size_t>(components_)};
  }
  Eigen::Map<Vector> vector_view(std::size_t point) {
    return Eigen::Map<Vector>(values_.data() + point * components_, components_);
  }
  Eigen::Map<const Vector> vector_view(std::size_t point) const {
    return Eigen::Map<const Vector>(values_.data() + point * components_, components_);
  }

  bool all_finite() const;
  bool compatible(const SampledField& other) const;

  SampledField& operator+=(const SampledField& other);
  SampledField& operator-=(const SampledField& other);
  SampledField& operator*=(cplx scale);

 private:
  GridSpec grid_;
  int components_ = 1;
  double q_ = 2.0;
  Domain domain_ = Domain::physical;
  std::vector<cplx> values_;
};

SampledField operator+(SampledField a, const SampledField& b);
SampledField operator-(SampledField a, const SampledField& b);
SampledField operator*(cplx s, SampledField a);

/// Space-time samples y_j = j dy, j = 0..J, each slice on the same grid.
class SpaceTimeField {
 public:
  SpaceTimeField() = default;
  SpaceTimeField(std::vector<SampledField> slices, double dy, double p = 2.0, double p1 = 2.0);

  std::size_t steps() const noexcept { return slices_.empty() ? 0 : slices_.size() - 1; }
  double dy() const noexcept { return dy_; }
  double horizon() const noexcept { return dy_ * static_cast<double>(steps()); }
  double time(std::size_t j) const noexcept { return dy_ * static_cast<double>(j); }
  double p() const noexcept { return p_; }
  double p1() const noexcept { return p1_; }
  void set_exponents(double p, double p1);

  const SampledField& slice(std::size_t j) const { return slices_.at(j); }
  SampledField& slice(std::size_t j) { return slices_.at(j); }
  std::span<const SampledField> slices() const noexcept { return slices_; }

 private:
  std::vector<SampledField> slices_;
  double dy_ = 1.0;
  double p_ = 2.0;
  double p1_ = 2.0;
};

/// Unitary DFT applied component-wise.
SampledField forward_transform(const SampledField& u);
SampledField inverse_transform(const SampledField& u_hat);

/// Multiplies every spectral coefficient by symbol(xi) (scalar multiplier).
SampledField apply_spectral_multiplier(const SampledField& u_hat,
                                       const std::function<cplx(std::span<const double>)>& symbol);

/// Spectral multiplication by (i xi)^alpha. Modes sitting on a Nyquist index
/// along an axis with alpha_k not an even integer are zeroed.
SampledField liouville_multiply(const SampledField& u_hat, const MultiIndex& alpha);
SampledField liouville_derivative(const SampledField& u, const MultiIndex& alpha);

/// Share of the spectral energy carried by modes that touch a Nyquist index.
double nyquist_energy_fraction(const SampledField& u_hat);

/// Pointwise x -> matrix * u(x).
SampledField apply_matrix(const Matrix& matrix, const SampledField& u);

double vector_norm(std::span<const cplx> v, double q);
double vector_norm(const Vector& v, double q);

/// Riemann-sum L_p norm of the pointwise l_q norm; p = inf gives the max.
double lp_lq_norm(const SampledField& u, double p);
/// sqrt(cell volume * sum |u_hat|^2), the Parseval partner of lp_lq_norm(u, 2) at q = 2.
double spectral_l2_norm(const SampledField& u_hat);

struct HNorm {
  double base = 0.0;     ///< ||A u|| when an operator is supplied, ||u|| otherwise
  double bracket = 0.0;  ///< ||F^-1 [1 + (sum t_k^{2/m} xi_k^2)^{1/2}]^m F u||
  double total() const { return base + bracket; }
};

HNorm h_m_pt_norm(const SampledField& u, const ScaleParams& t, double m, double p, const Matrix* A = nullptr);

/// Inner L_p over space per slice, outer L_{p1} over time with trapezoid weights.
double mixed_norm(const SpaceTimeField& u);

// Field builders used by tests, data generators and the CLI.
SampledField gaussian_field(const GridSpec& grid, const Vector& direction, double sigma, double q = 2.0);
SampledField mode_field(const GridSpec& grid, std::span<const int> wavenumbers, const Vector& direction,
                        double q = 2.0);
/// Complex Gaussian spectral coefficients on modes with |k_d| <= kmax on every
/// axis (Nyquist excluded), returned in physical space.
SampledField random_band_limited(const GridSpec& grid, int components, int kmax, std::mt19937_64& rng,
                                 double q = 2.0);
SampledField cyclic_shift(const SampledField& u, int axis, int shift);

/// Columnar text export: coordinates, then Re/Im per component.
void write_columns(std::ostream& os, const SampledField& u);
void write_columns(std::ostream& os, const SpaceTimeField& u);

}  // namespace psdo
