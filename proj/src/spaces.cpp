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
#include "psdo/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "fft.hpp"
#include "psdo/errors.hpp"

namespace psdo {

// --- GridSpec -----------------------------------------------------------------

GridSpec::GridSpec(int n_, int M_, double L_) : n(n_), M(M_), L(L_) { validate(); }

void GridSpec::validate() const {
  if (n < 1 || n > 3) raise(ErrorKind::InvalidArgument, "grid dimension n must be 1, 2 or 3");
  if (M < 4 || M % 2 != 0) raise(ErrorKind::InvalidArgument, "grid points per axis M must be even and >= 4");
  if (!(L > 0.0) || !std::isfinite(L)) raise(ErrorKind::InvalidArgument, "grid box length L must be positive");
}

std::size_t GridSpec::points() const {
  std::size_t total = 1;
  for (int d = 0; d < n; ++d) total *= static_cast<std::size_t>(M);
  return total;
}

double GridSpec::cell_volume() const { return std::pow(spacing(), n); }
double GridSpec::volume() const { return std::pow(L, n); }

void GridSpec::unflatten(std::size_t flat, std::span<int> index) const {
  for (int d = n - 1; d >= 0; --d) {
    index[static_cast<std::size_t>(d)] = static_cast<int>(flat % static_cast<std::size_t>(M));
    flat /= static_cast<std::size_t>(M);
  }
}

std::size_t GridSpec::flatten(std::span<const int> index) const {
  std::size_t flat = 0;
  for (int d = 0; d < n; ++d) flat = flat * static_cast<std::size_t>(M) + static_cast<std::size_t>(index[d]);
  return flat;
}

std::vector<double> GridSpec::frequency_of(std::size_t flat) const {
  std::vector<int> idx(static_cast<std::size_t>(n));
  unflatten(flat, idx);
  std::vector<double> xi(idx.size());
  for (std::size_t d = 0; d < idx.size(); ++d) xi[d] = frequency(idx[d]);
  return xi;
}

std::vector<double> GridSpec::coordinate_of(std::size_t flat) const {
  std::vector<int> idx(static_cast<std::size_t>(n));
  unflatten(flat, idx);
  std::vector<double> x(idx.size());
  for (std::size_t d = 0; d < idx.size(); ++d) x[d] = coordinate(idx[d]);
  return x;
}

bool GridSpec::touches_nyquist(std::size_t flat) const {
  for (int d = 0; d < n; ++d) {
    if (static_cast<int>(flat % static_cast<std::size_t>(M)) == M / 2) return true;
    flat /= static_cast<std::size_t>(M);
  }
  return false;
}

// --- SampledField -------------------------------------------------------------

SampledField::SampledField(GridSpec grid, int components, double q, Domain domain)
    : grid_(grid), components_(components), q_(q), domain_(domain) {
  grid_.validate();
  if (components_ < 1) raise(ErrorKind::InvalidArgument, "field needs at least one component");
  set_q(q);
  values_.assign(grid_.points() * static_cast<std::size_t>(components_), cplx(0.0, 0.0));
}

void SampledField::set_q(double q) {
  if (!(q >= 1.0)) raise(ErrorKind::InvalidArgument, "l_q exponent must lie in [1, inf]");
  q_ = q;
}

bool SampledField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

bool SampledField::compatible(const SampledField& other) const {
  return grid_ == other.grid_ && components_ == other.components_ && domain_ == other.domain_;
}

SampledField& SampledField::operator+=(const SampledField& other) {
  if (!compatible(other)) raise(ErrorKind::InvalidArgument, "incompatible fields in addition");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

SampledField& SampledField::operator-=(const SampledField& other) {
  if (!compatible(other)) raise(ErrorKind::InvalidArgument, "incompatible fields in subtraction");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

SampledField& SampledField::operator*=(cplx scale) {
  for (auto& v : values_) v *= scale;
  return *this;
}

SampledField operator+(SampledField a, const SampledField& b) { return a += b; }
SampledField operator-(SampledField a, const SampledField& b) { return a -= b; }
SampledField operator*(cplx s, SampledField a) { return a *= s; }

// --- SpaceTimeField -------------------------------------------------------------

SpaceTimeField::SpaceTimeField(std::vector<SampledField> slices, double dy, double p, double p1)
    : slices_(std::move(slices)), dy_(dy) {
  if (slices_.empty()) raise(ErrorKind::InvalidArgument, "space-time field needs at least one slice");
  if (!(dy_ > 0.0)) raise(ErrorKind::InvalidArgument, "time step must be positive");
  for (const auto& s : slices_) {
    if (!(s.grid() == slices_.front().grid()) || s.components() != slices_.front().components()) {
      raise(ErrorKind::InvalidArgument, "space-time slices must share grid and component count");
    }
  }
  set_exponents(p, p1);
}

void SpaceTimeField::set_exponents(double p, double p1) {
  if (!(p >= 1.0) || !(p1 >= 1.0)) raise(ErrorKind::InvalidArgument, "mixed-norm exponents must lie in [1, inf]");
  p_ = p;
  p1_ = p1;
}

// --- transforms ---------------------------------------------------------------

namespace {

SampledField transform(const SampledField& u, int sign, Domain result) {
  SampledField out(u);
  const auto& g = u.grid();
  detail::fft_in_place(out.values().data(), g.n, g.M, u.components(), sign);
  out *= 1.0 / std::sqrt(static_cast<double>(g.points()));
  out.set_domain(result);
  return out;
}

}  // namespace

SampledField forward_transform(const SampledField& u) { return transform(u, -1, Domain::spectral); }
SampledField inverse_transform(const SampledField& u_hat) { return transform(u_hat, +1, Domain::physical); }

SampledField apply_spectral_multiplier(const SampledField& u_hat,
                                       const std::function<cplx(std::span<const double>)>& symbol) {
  SampledField out(u_hat);
  const auto& g = u_hat.grid();
  const int N = u_hat.components();
  for (std::size_t k = 0; k < g.points(); ++k) {
    const auto xi = g.frequency_of(k);
    const cplx s = symbol(xi);
    for (int c = 0; c < N; ++c) out.at(k, c) *= s;
  }
  return out;
}

SampledField liouville_multiply(const SampledField& u_hat, const MultiIndex& alpha) {
  const auto& g = u_hat.grid();
  if (alpha.size() != static_cast<std::size_t>(g.n)) raise(ErrorKind::InvalidArgument, "multi-index dimension mismatch");
  SampledField out(u_hat);
  if (alpha.is_zero()) return out;
  const int N = u_hat.components();
  std::vector<int> idx(static_cast<std::size_t>(g.n));
  std::vector<double> xi(idx.size());
  for (std::size_t k = 0; k < g.points(); ++k) {
    g.unflatten(k, idx);
    bool drop = false;
    for (std::size_t d = 0; d < idx.size(); ++d) {
      xi[d] = g.frequency(idx[d]);
      if (g.is_nyquist(idx[d]) && !alpha.is_even(d)) drop = true;
    }
    const cplx s = drop ? cplx(0.0, 0.0) : i_xi_power(xi, alpha);
    for (int c = 0; c < N; ++c) out.at(k, c) *= s;
  }
  return out;
}

SampledField liouville_derivative(const SampledField& u, const MultiIndex& alpha) {
  return inverse_transform(liouville_multiply(forward_transform(u), alpha));
}

double nyquist_energy_fraction(const SampledField& u_hat) {
  const auto& g = u_hat.grid();
  double total = 0.0;
  double nyquist = 0.0;
  for (std::size_t k = 0; k < g.points(); ++k) {
    double e = 0.0;
    for (int c = 0; c < u_hat.components(); ++c) e += std::norm(u_hat.at(k, c));
    total += e;
    if (g.touches_nyquist(k)) nyquist += e;
  }
  return total > 0.0 ? nyquist / total : 0.0;
}

SampledField apply_matrix(const Matrix& matrix, const SampledField& u) {
  if (matrix.rows() != u.components() || matrix.cols() != u.components()) {
    raise(ErrorKind::InvalidArgument, "matrix / field component mismatch");
  }
  SampledField out(u);
  for (std::size_t k = 0; k < u.points(); ++k) out.vector_view(k) = matrix * u.vector_view(k);
  return out;
}

// --- norms --------------------------------------------------------------------

double vector_norm(std::span<const cplx> v, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double s = 0.0;
  if (q == 1.0) {
    for (const auto& x : v) s += std::abs(x);
    return s;
  }
  if (q == 2.0) {
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
  }
  for (const auto& x : v) s += std::pow(std::abs(x), q);
  return std::pow(s, 1.0 / q);
}

double vector_norm(const Vector& v, double q) {
  return vector_norm(std::span<const cplx>(v.data(), static_cast<std::size_t>(v.size())), q);
}

double lp_lq_norm(const SampledField& u, double p) {
  if (!(p >= 1.0)) raise(ErrorKind::InvalidArgument, "L_p exponent must lie in [1, inf]");
  const double q = u.q();
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t k = 0; k < u.points(); ++k) m = std::max(m, vector_norm(u.vector_at(k), q));
    return m;
  }
  double s = 0.0;
  for (std::size_t k = 0; k < u.points(); ++k) {
    const double v = vector_norm(u.vector_at(k), q);
    s += p == 2.0 ? v * v : std::pow(v, p);
  }
  s *= u.grid().cell_volume();
  return p == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p);
}

double spectral_l2_norm(const SampledField& u_hat) {
  double s = 0.0;
  for (const auto& v : u_hat.values()) s += std::norm(v);
  return std::sqrt(u_hat.grid().cell_volume() * s);
}

HNorm h_m_pt_norm(const SampledField& u, const ScaleParams& t, double m, double p, const Matrix* A) {
  if (t.size() != static_cast<std::size_t>(u.grid().n)) raise(ErrorKind::InvalidArgument, "scale dimension mismatch");
  HNorm out;
  out.base = A ? lp_lq_norm(apply_matrix(*A, u), p) : lp_lq_norm(u, p);
  const auto bracket = [&](std::span<const double> xi) {
    double s = 0.0;
    for (std::size_t k = 0; k < xi.size(); ++k) s += std::pow(t[k], 2.0 / m) * xi[k] * xi[k];
    return cplx(std::pow(1.0 + std::sqrt(s), m), 0.0);
  };
  out.bracket = lp_lq_norm(inverse_transform(apply_spectral_multiplier(forward_transform(u), bracket)), p);
  return out;
}

double mixed_norm(const SpaceTimeField& u) {
  const std::size_t J = u.steps();
  const double p1 = u.p1();
  if (std::isinf(p1)) {
    double m = 0.0;
    for (std::size_t j = 0; j <= J; ++j) m = std::max(m, lp_lq_norm(u.slice(j), u.p()));
    return m;
  }
  if (J == 0) return 0.0;
  double s = 0.0;
  for (std::size_t j = 0; j <= J; ++j) {
    const double w = (j == 0 || j == J) ? 0.5 * u.dy() : u.dy();
    s += w * std::pow(lp_lq_norm(u.slice(j), u.p()), p1);
  }
  return std::pow(s, 1.0 / p1);
}

// --- builders -------------------------------------------------------------------

SampledField gaussian_field(const GridSpec& grid, const Vector& direction, double sigma, double q) {
  SampledField u(grid, static_cast<int>(direction.size()), q);
  for (std::size_t k = 0; k < grid.points(); ++k) {
    const auto x = grid.coordinate_of(k);
    double r2 = 0.0;
    for (double xi : x) r2 += xi * xi;
    u.vector_view(k) = std::exp(-0.5 * r2 / (sigma * sigma)) * direction;
  }
  return u;
}

SampledField mode_field(const GridSpec& grid, std::span<const int> wavenumbers, const Vector& direction, double q) {
  if (wavenumbers.size() != static_cast<std::size_t>(grid.n)) raise(ErrorKind::InvalidArgument, "mode dimension mismatch");
  SampledField u(grid, static_cast<int>(direction.size()), q);
  for (std::size_t k = 0; k < grid.points(); ++k) {
    const auto x = grid.coordinate_of(k);
    double phase = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) phase += 2.0 * kPi * wavenumbers[d] / grid.L * x[d];
    u.vector_view(k) = std::polar(1.0, phase) * direction;
  }
  return u;
}

SampledField random_band_limited(const GridSpec& grid, int components, int kmax, std::mt19937_64& rng, double q) {
  if (kmax < 0) raise(ErrorKind::InvalidArgument, "band limit must be nonnegative");
  SampledField u_hat(grid, components, q, Domain::spectral);
  std::normal_distribution<double> normal;
  std::vector<int> idx(static_cast<std::size_t>(grid.n));
  for (std::size_t k = 0; k < grid.points(); ++k) {
    if (grid.touches_nyquist(k)) continue;
    grid.unflatten(k, idx);
    bool inside = true;
    for (int j : idx) inside = inside && std::abs(grid.wavenumber(j)) <= kmax;
    if (!inside) continue;
    for (int c = 0; c < components; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      u_hat.at(k, c) = cplx(re, im);
    }
  }
  return inverse_transform(u_hat);
}

SampledField cyclic_shift(const SampledField& u, int axis, int shift) {
  const auto& g = u.grid();
  SampledField out(u);
  std::vector<int> idx(static_cast<std::size_t>(g.n));
  for (std::size_t k = 0; k < g.points(); ++k) {
    g.unflatten(k, idx);
    idx[static_cast<std::size_t>(axis)] = ((idx[static_cast<std::size_t>(axis)] + shift) % g.M + g.M) % g.M;
    out.vector_view(g.flatten(idx)) = u.vector_view(k);
  }
  return out;
}

// --- export ---------------------------------------------------------------------

void write_columns(std::ostream& os, const SampledField& u) {
  const auto& g = u.grid();
  os << "#";
  for (int d = 0; d < g.n; ++d) os << " x" << d + 1;
  for (int c = 0; c < u.components(); ++c) os << " re" << c + 1 << " im" << c + 1;
  os << '\n' << std::setprecision(17);
  for (std::size_t k = 0; k < g.points(); ++k) {
    const auto x = u.domain() == Domain::physical ? g.coordinate_of(k) : g.frequency_of(k);
    for (std::size_t d = 0; d < x.size(); ++d) os << (d ? " " : "") << x[d];
    for (int c = 0; c < u.components(); ++c) os << ' ' << u.at(k, c).real() << ' ' << u.at(k, c).imag();
    os << '\n';
  }
}

void write_columns(std::ostream& os, const SpaceTimeField& u) {
  for (std::size_t j = 0; j <= u.steps(); ++j) {
    os << "# y = " << std::setprecision(17) << u.time(j) << '\n';
    write_columns(os, u.slice(j));
  }
}

}  // namespace psdo
