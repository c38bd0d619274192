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
#include "psdo/parabolic.hpp"

#include <cmath>
#include <sstream>

#include "psdo/errors.hpp"
#include "psdo/sweep.hpp"

namespace psdo {

void ParabolicProblem::validate() const {
  elliptic.validate();
  if (elliptic.lambda != cplx(0.0, 0.0)) raise(ErrorKind::InvalidArgument, "parabolic problems use lambda = 0");
  if (!elliptic.lower_terms.empty()) raise(ErrorKind::InvalidArgument, "parabolic problems take no lower terms");
  if (!(phi > 0.5 * kPi && phi < kPi)) raise(ErrorKind::Validation, "parabolic problems need a positivity angle phi in (pi/2, pi)");
  if (forcing.steps() < 1) raise(ErrorKind::InvalidArgument, "forcing needs at least one time step");
  if (!(forcing.dy() > 0.0)) raise(ErrorKind::InvalidArgument, "time step must be positive");
  for (const auto& s : forcing.slices()) {
    if (!(s.grid() == elliptic.grid) || s.components() != elliptic.components() || s.domain() != Domain::physical) {
      raise(ErrorKind::InvalidArgument, "forcing slices must match the problem grid and dimension");
    }
  }
}

PositivityCertificate ParabolicProblem::certify() const {
  const std::vector<double> rays = {-phi, 0.0, phi};
  std::vector<double> radii = {0.0};
  for (double r : log_space(1e-2, 1e6, 17)) radii.push_back(r);
  const SectorSweep sweep(phi, rays, radii, {ScaleParams::isotropic(1, 1.0)});
  PositivityCertificate cert = check_positivity(elliptic.model, phi, sweep);
  if (!cert.ok) raise(ErrorKind::Validation, "operator is not positive on the parabolic sector: " + cert.failure);
  return cert;
}

SpaceTimeField separable_forcing(const SampledField& w, const std::function<double(double)>& g, double Y, int J,
                                 double p, double p1) {
  if (J < 1 || !(Y > 0.0)) raise(ErrorKind::InvalidArgument, "forcing needs J >= 1 and Y > 0");
  const double dy = Y / J;
  std::vector<SampledField> slices;
  slices.reserve(static_cast<std::size_t>(J) + 1);
  for (int j = 0; j <= J; ++j) slices.push_back(cplx(g(j * dy), 0.0) * w);
  return SpaceTimeField(std::move(slices), dy, p, p1);
}

cplx phi1(cplx z) {
  if (std::abs(z) < 0.5) {
    cplx sum = 0.0, term = 1.0;
    for (int k = 0; k < 30; ++k) {
      term = k == 0 ? cplx(1.0) : term * z / static_cast<double>(k + 1);
      sum += term;
    }
    return sum;
  }
  return (std::exp(z) - 1.0) / z;
}

cplx phi2(cplx z) {
  if (std::abs(z) < 0.5) {
    cplx sum = 0.0, term = 0.5;
    for (int k = 0; k < 30; ++k) {
      if (k > 0) term = term * z / static_cast<double>(k + 2);
      sum += term;
    }
    return sum;
  }
  return (std::exp(z) - 1.0 - z) / (z * z);
}

namespace {

std::vector<SampledField> spectral_slices(const SpaceTimeField& f) {
  std::vector<SampledField> out;
  out.reserve(f.slices().size());
  for (const auto& s : f.slices()) out.push_back(forward_transform(s));
  return out;
}

SpaceTimeField to_physical(std::vector<SampledField> spectral, const SpaceTimeField& like) {
  for (auto& s : spectral) s = inverse_transform(s);
  return SpaceTimeField(std::move(spectral), like.dy(), like.p(), like.p1());
}

void require_diagonalizable(const OperatorModel& model) {
  if (!model.diagonalizable()) raise(ErrorKind::NotDiagonalizable, "eigenvector condition number exceeds 1e6");
}

}  // namespace

SpaceTimeField solve_duhamel(const ParabolicProblem& prob) {
  prob.validate();
  const auto& ell = prob.elliptic;
  require_diagonalizable(ell.model);
  const auto& cache = ell.model.eigen();
  const int N = ell.components();
  const double h = prob.forcing.dy();
  const std::size_t J = prob.forcing.steps();
  const auto symbol = symbol_on_grid(ell.symbol, ell.t, ell.grid);

  const auto f_hat = spectral_slices(prob.forcing);
  std::vector<SampledField> u_hat(J + 1, SampledField(ell.grid, N, prob.forcing.slice(0).q(), Domain::spectral));
  Vector w(N), g_prev(N), g_next(N), decay(N), c_prev(N), c_next(N);
  for (std::size_t k = 0; k < ell.grid.points(); ++k) {
    for (int c = 0; c < N; ++c) {
      const cplx z = -(cache.values(c) + symbol[k]) * h;
      const cplx f1 = phi1(z), f2 = phi2(z);
      decay(c) = std::exp(z);
      c_prev(c) = h * (f1 - f2);
      c_next(c) = h * f2;
    }
    w.setZero();
    g_prev = cache.inverse * f_hat[0].vector_view(k);
    for (std::size_t j = 0; j < J; ++j) {
      g_next = cache.inverse * f_hat[j + 1].vector_view(k);
      w = decay.cwiseProduct(w) + c_prev.cwiseProduct(g_prev) + c_next.cwiseProduct(g_next);
      u_hat[j + 1].vector_view(k) = cache.vectors * w;
      g_prev = g_next;
    }
  }
  return to_physical(std::move(u_hat), prob.forcing);
}

SpaceTimeField solve_implicit_euler(const ParabolicProblem& prob) {
  prob.validate();
  const auto& ell = prob.elliptic;
  const int N = ell.components();
  const double h = prob.forcing.dy();
  const std::size_t J = prob.forcing.steps();
  const auto symbol = symbol_on_grid(ell.symbol, ell.t, ell.grid);
  const Matrix I = Matrix::Identity(N, N);

  const auto f_hat = spectral_slices(prob.forcing);
  std::vector<SampledField> u_hat(J + 1, SampledField(ell.grid, N, prob.forcing.slice(0).q(), Domain::spectral));
  for (std::size_t k = 0; k < ell.grid.points(); ++k) {
    const Matrix step = I + h * (ell.model.matrix() + symbol[k] * I);
    const Eigen::PartialPivLU<Matrix> lu(step);
    if (!(lu.rcond() > 1e-14)) {
      std::ostringstream os;
      os << "implicit Euler step matrix is singular at spectral index " << k;
      raise(ErrorKind::ModeSingular, os.str());
    }
    Vector u = Vector::Zero(N);
    for (std::size_t j = 0; j < J; ++j) {
      u = lu.solve(Vector(u + h * f_hat[j + 1].vector_view(k)));
      u_hat[j + 1].vector_view(k) = u;
    }
  }
  return to_physical(std::move(u_hat), prob.forcing);
}

double parabolic_coercive_ratio(const ParabolicProblem& prob, const SpaceTimeField& u) {
  prob.validate();
  const std::size_t J = u.steps();
  if (J < 2) raise(ErrorKind::InvalidArgument, "coercive ratio needs at least two time steps");
  if (J != prob.forcing.steps()) raise(ErrorKind::InvalidArgument, "solution and forcing time grids differ");
  const double fn = mixed_norm(prob.forcing);
  if (fn == 0.0) raise(ErrorKind::DivisionByZero, "forcing vanishes; coercive ratio not applicable");

  const auto& ell = prob.elliptic;
  const double h = u.dy();
  const auto symbol = symbol_on_grid(ell.symbol, ell.t, ell.grid);
  std::vector<SampledField> dudy, pu, au;
  for (std::size_t j = 0; j <= J; ++j) {
    SampledField d(ell.grid, ell.components(), u.slice(j).q());
    if (j == 0) {
      d = cplx(-1.5 / h) * u.slice(0) + cplx(2.0 / h) * u.slice(1) - cplx(0.5 / h) * u.slice(2);
    } else if (j == J) {
      d = cplx(1.5 / h) * u.slice(J) - cplx(2.0 / h) * u.slice(J - 1) + cplx(0.5 / h) * u.slice(J - 2);
    } else {
      d = cplx(0.5 / h) * (u.slice(j + 1) - u.slice(j - 1));
    }
    dudy.push_back(std::move(d));
    SampledField s = forward_transform(u.slice(j));
    for (std::size_t k = 0; k < s.points(); ++k) s.vector_view(k) *= symbol[k];
    pu.push_back(inverse_transform(s));
    au.push_back(apply_matrix(ell.model.matrix(), u.slice(j)));
  }
  const double num = mixed_norm(SpaceTimeField(std::move(dudy), h, u.p(), u.p1())) +
                     mixed_norm(SpaceTimeField(std::move(pu), h, u.p(), u.p1())) +
                     mixed_norm(SpaceTimeField(std::move(au), h, u.p(), u.p1()));
  return num / fn;
}

std::vector<Matrix> semigroup_propagator(const ParabolicProblem& prob, double y) {
  if (!(y >= 0.0)) raise(ErrorKind::InvalidArgument, "propagation time must be nonnegative");
  const auto& ell = prob.elliptic;
  ell.validate();
  require_diagonalizable(ell.model);
  const auto& cache = ell.model.eigen();
  const int N = ell.components();
  const auto symbol = symbol_on_grid(ell.symbol, ell.t, ell.grid);
  std::vector<Matrix> out;
  out.reserve(symbol.size());
  Vector d(N);
  for (cplx s : symbol) {
    for (int c = 0; c < N; ++c) d(c) = std::exp(-y * (cache.values(c) + s));
    out.push_back(cache.vectors * d.asDiagonal() * cache.inverse);
  }
  return out;
}

}  // namespace psdo
