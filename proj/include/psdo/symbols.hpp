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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psdo/types.hpp"

namespace psdo {

/// Real multi-index alpha = (alpha_1, ..., alpha_n) with nonnegative entries.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<double> components);

  static MultiIndex zero(std::size_t n);
  /// value * e_k
  static MultiIndex axis(std::size_t n, std::size_t k, double value);

  std::size_t size() const noexcept { return components_.size(); }
  double order() const noexcept { return order_; }
  double operator[](std::size_t k) const { return components_[k]; }
  std::span<const double> components() const noexcept { return components_; }

  bool is_zero() const noexcept { return order_ == 0.0; }
  /// True when component k is a nonnegative even integer.
  bool is_even(std::size_t k) const;

  MultiIndex operator+(const MultiIndex& other) const;
  bool operator==(const MultiIndex& other) const = default;

  std::string to_string() const;

 private:
  std::vector<double> components_;
  double order_ = 0.0;
};

/// Closed sector S_phi = {z : |arg z| <= phi} together with the origin.
struct Sector {
  double angle = 0.0;

  explicit Sector(double phi);
  bool contains(cplx z, double angle_tolerance = 0.0) const;
};

/// Scale parameters t = (t_1, ..., t_n) with 0 < t_k <= cap.
class ScaleParams {
 public:
  ScaleParams() = default;
  ScaleParams(std::vector<double> t, double cap);

  static ScaleParams isotropic(std::size_t n, double value, double cap = 1.0);

  std::size_t size() const noexcept { return t_.size(); }
  double operator[](std::size_t k) const { return t_[k]; }
  std::span<const double> values() const noexcept { return t_; }
  double cap() const noexcept { return cap_; }

  /// t(alpha) = prod_k t_k^{alpha_k / m}
  double weight(const MultiIndex& alpha, double m) const;

 private:
  std::vector<double> t_;
  double cap_ = 1.0;
};

enum class SymbolKind { power, rotated_power, smoothed_power, user_table };

const char* to_string(SymbolKind kind) noexcept;
SymbolKind symbol_kind_from_string(const std::string& name);

/// Per-axis tabulated profile g; the table symbol is sum_k t_k g(xi_k) with
/// g linearly interpolated between nodes. Nodes must be strictly increasing.
struct SymbolTable {
  std::vector<double> nodes;
  std::vector<cplx> values;
};

struct SymbolSpec {
  SymbolKind kind = SymbolKind::power;
  double m = 2.0;
  double theta0 = 0.0;
  double epsilon = 0.0;
  double gamma = 1.0;
  /// Declared sector angle; empty means "derive from the kind".
  std::optional<double> phi1;
  SymbolTable table;

  static SymbolSpec power(double m);
  static SymbolSpec rotated_power(double m, double theta0);
  static SymbolSpec smoothed_power(double m, double epsilon);
  static SymbolSpec negated_power(double m);

  /// The sector angle the symbol claims to map into.
  double sector_angle() const;
  void validate() const;
};

/// (i xi)^alpha with the logarithmic branch exp[alpha_k (ln|xi_k| + i pi sgn(xi_k)/2)].
/// Any factor with xi_k = 0 and alpha_k > 0 vanishes.
cplx i_xi_power(std::span<const double> xi, const MultiIndex& alpha);

cplx eval_symbol(const SymbolSpec& spec, const ScaleParams& t, std::span<const double> xi);

/// All beta in {0,1}^n.
std::vector<MultiIndex> binary_multi_indices(std::size_t n);

struct DerivativeBound {
  MultiIndex beta;
  double constant = 0.0;  ///< smallest C_beta consistent with the samples
  std::size_t samples = 0;
};

struct SymbolClassReport {
  std::vector<DerivativeBound> bounds;
  bool in_sector = true;
  double worst_argument = 0.0;  ///< max |arg P| seen
  double lower_margin = kInf;   ///< min |P| / (gamma sum t_k |xi_k|^m)
  bool pass = false;
};

/// Empirical check of the symbol-class condition: derivative bounds for each
/// beta (central differences, step 1e-4 (1 + |xi_k|)), sector membership and
/// the lower bound |P| >= gamma sum t_k |xi_k|^m.
SymbolClassReport check_symbol_class(const SymbolSpec& spec, std::span<const ScaleParams> t_grid,
                                     std::span<const std::vector<double>> xi_grid,
                                     std::span<const MultiIndex> betas);

/// min |lambda + nu| / (|lambda| + |nu|) over sampled boundary pairs of
/// S_phi1 x S_phi2. Throws AngleSumTooLarge when phi1 + phi2 >= pi.
double sector_sum_constant(double phi1, double phi2, std::size_t samples);

}  // namespace psdo
