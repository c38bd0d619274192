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
#include "psdo/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "psdo/errors.hpp"

namespace psdo {

// --- MultiIndex -------------------------------------------------------------

MultiIndex::MultiIndex(std::vector<double> components) : components_(std::move(components)) {
  for (double c : components_) {
    if (!std::isfinite(c) || c < 0.0) {
      raise(ErrorKind::InvalidArgument, "multi-index components must be finite and nonnegative");
    }
  }
  order_ = std::accumulate(components_.begin(), components_.end(), 0.0);
}

MultiIndex MultiIndex::zero(std::size_t n) { return MultiIndex(std::vector<double>(n, 0.0)); }

MultiIndex MultiIndex::axis(std::size_t n, std::size_t k, double value) {
  std::vector<double> c(n, 0.0);
  c.at(k) = value;
  return MultiIndex(std::move(c));
}

bool MultiIndex::is_even(std::size_t k) const {
  const double half = components_[k] / 2.0;
  return half == std::floor(half);
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.size() != size()) raise(ErrorKind::InvalidArgument, "multi-index dimension mismatch");
  std::vector<double> c(size());
  for (std::size_t k = 0; k < size(); ++k) c[k] = components_[k] + other.components_[k];
  return MultiIndex(std::move(c));
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < size(); ++k) os << (k ? "," : "") << components_[k];
  os << ')';
  return os.str();
}

// --- Sector / ScaleParams -----------------------------------------------------

Sector::Sector(double phi) : angle(phi) {
  if (!(phi >= 0.0 && phi < kPi)) raise(ErrorKind::InvalidArgument, "sector angle must lie in [0, pi)");
}

bool Sector::contains(cplx z, double angle_tolerance) const {
  if (z == cplx(0.0, 0.0)) return true;
  return std::abs(std::arg(z)) <= angle + angle_tolerance;
}

ScaleParams::ScaleParams(std::vector<double> t, double cap) : t_(std::move(t)), cap_(cap) {
  if (!(cap_ > 0.0) || !std::isfinite(cap_)) raise(ErrorKind::InvalidArgument, "scale cap t0 must be positive");
  for (double v : t_) {
    if (!(v > 0.0) || v > cap_) raise(ErrorKind::InvalidArgument, "scale parameters must satisfy 0 < t_k <= t0");
  }
}

ScaleParams ScaleParams::isotropic(std::size_t n, double value, double cap) {
  return ScaleParams(std::vector<double>(n, value), cap);
}

double ScaleParams::weight(const MultiIndex& alpha, double m) const {
  if (alpha.size() != t_.size()) raise(ErrorKind::InvalidArgument, "multi-index / scale dimension mismatch");
  double w = 1.0;
  for (std::size_t k = 0; k < t_.size(); ++k) {
    if (alpha[k] != 0.0) w *= std::pow(t_[k], alpha[k] / m);
  }
  return w;
}

// --- SymbolSpec -------------------------------------------------------------

const char* to_string(SymbolKind kind) noexcept {
  switch (kind) {
    case SymbolKind::power: return "power";
    case SymbolKind::rotated_power: return "rotated-power";
    case SymbolKind::smoothed_power: return "smoothed-power";
    case SymbolKind::user_table: return "user-table";
  }
  return "unknown";
}

SymbolKind symbol_kind_from_string(const std::string& name) {
  if (name == "power") return SymbolKind::power;
  if (name == "rotated-power") return SymbolKind::rotated_power;
  if (name == "smoothed-power") return SymbolKind::smoothed_power;
  if (name == "user-table") return SymbolKind::user_table;
  raise(ErrorKind::InvalidArgument, "unknown symbol kind '" + name + "'");
}

SymbolSpec SymbolSpec::power(double m) {
  SymbolSpec s;
  s.kind = SymbolKind::power;
  s.m = m;
  return s;
}

SymbolSpec SymbolSpec::rotated_power(double m, double theta0) {
  SymbolSpec s;
  s.kind = SymbolKind::rotated_power;
  s.m = m;
  s.theta0 = theta0;
  return s;
}

SymbolSpec SymbolSpec::smoothed_power(double m, double epsilon) {
  SymbolSpec s;
  s.kind = SymbolKind::smoothed_power;
  s.m = m;
  s.epsilon = epsilon;
  return s;
}

SymbolSpec SymbolSpec::negated_power(double m) {
  // -sum t_k |xi_k|^m, still claiming the positive real axis as its sector.
  SymbolSpec s = rotated_power(m, kPi);
  s.phi1 = 0.0;
  return s;
}

double SymbolSpec::sector_angle() const {
  if (phi1) return *phi1;
  switch (kind) {
    case SymbolKind::rotated_power: return std::abs(theta0);
    case SymbolKind::power:
    case SymbolKind::smoothed_power:
    case SymbolKind::user_table: return 0.0;
  }
  return 0.0;
}

void SymbolSpec::validate() const {
  if (!(m > 0.0) || !std::isfinite(m)) raise(ErrorKind::InvalidArgument, "symbol order m must be positive");
  if (!(gamma > 0.0)) raise(ErrorKind::InvalidArgument, "symbol lower-bound constant gamma must be positive");
  if (!(epsilon >= 0.0)) raise(ErrorKind::InvalidArgument, "smoothing epsilon must be nonnegative");
  const double phi = sector_angle();
  if (!(phi >= 0.0 && phi < kPi)) raise(ErrorKind::InvalidArgument, "symbol sector angle phi1 must lie in [0, pi)");
  if (kind == SymbolKind::user_table) {
    if (table.nodes.size() < 2 || table.nodes.size() != table.values.size()) {
      raise(ErrorKind::InvalidArgument, "user-table symbol needs >= 2 nodes with matching values");
    }
    for (std::size_t i = 1; i < table.nodes.size(); ++i) {
      if (!(table.nodes[i] > table.nodes[i - 1])) raise(ErrorKind::InvalidArgument, "user-table nodes must increase");
    }
  }
}

// --- evaluation ---------------------------------------------------------------

cplx i_xi_power(std::span<const double> xi, const MultiIndex& alpha) {
  if (xi.size() != alpha.size()) raise(ErrorKind::InvalidArgument, "frequency / multi-index dimension mismatch");
  double modulus = 1.0;
  double phase = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) {
    const double a = alpha[k];
    if (a == 0.0) continue;
    if (xi[k] == 0.0) return {0.0, 0.0};
    modulus *= std::pow(std::abs(xi[k]), a);
    phase += a * (xi[k] > 0.0 ? 0.5 * kPi : -0.5 * kPi);
  }
  return std::polar(modulus, phase);
}

namespace {

cplx table_profile(const SymbolTable& table, double x) {
  const auto& nodes = table.nodes;
  if (x < nodes.front() || x > nodes.back()) {
    std::ostringstream os;
    os << "frequency " << x << " outside tabulated range [" << nodes.front() << ", " << nodes.back() << "]";
    raise(ErrorKind::OutOfTable, os.str());
  }
  auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - nodes.begin());
  if (hi >= nodes.size()) return table.values.back();
  const std::size_t lo = hi - 1;
  const double w = (x - nodes[lo]) / (nodes[hi] - nodes[lo]);
  return (1.0 - w) * table.values[lo] + w * table.values[hi];
}

}  // namespace

cplx eval_symbol(const SymbolSpec& spec, const ScaleParams& t, std::span<const double> xi) {
  if (xi.size() != t.size()) raise(ErrorKind::InvalidArgument, "frequency / scale dimension mismatch");
  switch (spec.kind) {
    case SymbolKind::power:
    case SymbolKind::rotated_power: {
      double sum = 0.0;
      for (std::size_t k = 0; k < xi.size(); ++k) sum += t[k] * std::pow(std::abs(xi[k]), spec.m);
      if (spec.kind == SymbolKind::power) return {sum, 0.0};
      return std::polar(sum, spec.theta0);
    }
    case SymbolKind::smoothed_power: {
      double sum = 0.0;
      const double e2 = spec.epsilon * spec.epsilon;
      for (std::size_t k = 0; k < xi.size(); ++k) sum += t[k] * std::pow(e2 + xi[k] * xi[k], 0.5 * spec.m);
      return {sum, 0.0};
    }
    case SymbolKind::user_table: {
      cplx sum = 0.0;
      for (std::size_t k = 0; k < xi.size(); ++k) sum += t[k] * table_profile(spec.table, xi[k]);
      return sum;
    }
  }
  return {0.0, 0.0};
}

std::vector<MultiIndex> binary_multi_indices(std::size_t n) {
  std::vector<MultiIndex> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<double> c(n);
    for (std::size_t k = 0; k < n; ++k) c[k] = (mask >> k) & 1U ? 1.0 : 0.0;
    out.emplace_back(std::move(c));
  }
  return out;
}

// --- symbol-class checker -------------------------------------------------------

namespace {

// Mixed central difference over the axes where beta_k = 1.
cplx mixed_difference(const SymbolSpec& spec, const ScaleParams& t, const std::vector<double>& xi,
                      const std::vector<std::size_t>& axes, const std::vector<double>& steps) {
  const std::size_t d = axes.size();
  std::vector<double> shifted(xi);
  cplx acc = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    double sign = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      const bool plus = (mask >> j) & 1U;
      shifted[axes[j]] = xi[axes[j]] + (plus ? steps[j] : -steps[j]);
      if (!plus) sign = -sign;
    }
    acc += sign * eval_symbol(spec, t, shifted);
  }
  double denom = 1.0;
  for (double h : steps) denom *= 2.0 * h;
  return acc / denom;
}

}  // namespace

SymbolClassReport check_symbol_class(const SymbolSpec& spec, std::span<const ScaleParams> t_grid,
                                     std::span<const std::vector<double>> xi_grid,
                                     std::span<const MultiIndex> betas) {
  spec.validate();
  SymbolClassReport report;
  const double phi1 = spec.sector_angle();
  for (const auto& beta : betas) report.bounds.push_back({beta, 0.0, 0});

  for (const auto& t : t_grid) {
    for (const auto& xi : xi_grid) {
      const cplx value = eval_symbol(spec, t, xi);
      if (value != cplx(0.0, 0.0)) {
        const double arg = std::abs(std::arg(value));
        report.worst_argument = std::max(report.worst_argument, arg);
        if (arg > phi1 + 1e-12) report.in_sector = false;
      }
      double homogeneous = 0.0;
      for (std::size_t k = 0; k < xi.size(); ++k) homogeneous += t[k] * std::pow(std::abs(xi[k]), spec.m);
      if (homogeneous > 0.0) {
        report.lower_margin = std::min(report.lower_margin, std::abs(value) / (spec.gamma * homogeneous));
      }

      for (auto& bound : report.bounds) {
        const auto& beta = bound.beta;
        std::vector<std::size_t> axes;
        std::vector<double> steps;
        bool skip = false;
        for (std::size_t k = 0; k < beta.size(); ++k) {
          if (beta[k] == 0.0) continue;
          const double h = 1e-4 * (1.0 + std::abs(xi[k]));
          if (std::abs(xi[k]) < 10.0 * h) skip = true;
          axes.push_back(k);
          steps.push_back(h);
        }
        if (skip) continue;

        cplx derivative = value;
        if (!axes.empty()) {
          derivative = mixed_difference(spec, t, xi, axes, steps);
          std::vector<double> half(steps);
          for (double& h : half) h *= 0.5;
          const cplx refined = mixed_difference(spec, t, xi, axes, half);
          const double h_min = *std::min_element(half.begin(), half.end());
          const bool diverging = std::abs(refined) > 1.9 * std::abs(derivative) &&
                                 std::abs(refined) * h_min > 1e-3 * (1.0 + std::abs(value));
          if (!std::isfinite(std::abs(derivative)) || !std::isfinite(std::abs(refined)) || diverging) {
            raise(ErrorKind::NonFiniteDerivative, "finite differences diverge for beta " + beta.to_string() +
                                                      " (symbol not differentiable on the sample grid)");
          }
        }

        const double reduced = spec.m - beta.order();
        double bracket = 1.0;
        if (reduced != 0.0) {
          double s = 0.0;
          for (std::size_t k = 0; k < xi.size(); ++k) s += std::pow(t[k], 2.0 / reduced) * xi[k] * xi[k];
          bracket = std::pow(1.0 + std::sqrt(s), reduced);
        }
        bound.constant = std::max(bound.constant, std::abs(derivative) / bracket);
        ++bound.samples;
      }
    }
  }

  const bool finite = std::all_of(report.bounds.begin(), report.bounds.end(),
                                  [](const DerivativeBound& b) { return std::isfinite(b.constant); });
  const bool lower_ok = !(report.lower_margin < 1.0 - 1e-9);
  report.pass = finite && report.in_sector && lower_ok;
  return report;
}

double sector_sum_constant(double phi1, double phi2, std::size_t samples) {
  if (!(phi1 >= 0.0) || !(phi2 >= 0.0)) raise(ErrorKind::InvalidArgument, "sector angles must be nonnegative");
  if (phi1 + phi2 >= kPi) raise(ErrorKind::AngleSumTooLarge, "phi1 + phi2 must be < pi");
  // Homogeneous of degree one: fix |lambda| = 1 and scan |nu| over a
  // symmetric log grid (odd count so |nu| = 1 is hit exactly).
  std::size_t radii = std::max<std::size_t>(samples / 4, 3);
  if (radii % 2 == 0) ++radii;
  double best = 1.0;
  for (double s1 : {-1.0, 1.0}) {
    const cplx lambda = std::polar(1.0, s1 * phi1);
    for (double s2 : {-1.0, 1.0}) {
      for (std::size_t j = 0; j < radii; ++j) {
        const double exponent = -3.0 + 6.0 * static_cast<double>(j) / static_cast<double>(radii - 1);
        const double r = (2 * j + 1 == radii) ? 1.0 : std::pow(10.0, exponent);
        const cplx nu = std::polar(r, s2 * phi2);
        best = std::min(best, std::abs(lambda + nu) / (1.0 + r));
      }
    }
  }
  return best;
}

}  // namespace psdo
