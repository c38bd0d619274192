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
#include "psdo/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "psdo/errors.hpp"
#include "psdo/sweep.hpp"

namespace psdo {

// --- LowerTerm / EllipticProblem ----------------------------------------------

LowerTerm LowerTerm::constant(MultiIndex alpha, Matrix coefficient) {
  LowerTerm term;
  term.alpha = std::move(alpha);
  term.coefficients.push_back(std::move(coefficient));
  return term;
}

LowerTerm LowerTerm::field(MultiIndex alpha, std::vector<Matrix> coefficients) {
  LowerTerm term;
  term.alpha = std::move(alpha);
  term.coefficients = std::move(coefficients);
  return term;
}

void EllipticProblem::validate() const {
  grid.validate();
  symbol.validate();
  const int N = model.dimension();
  if (N < 1) raise(ErrorKind::InvalidArgument, "problem has no operator");
  if (t.size() != static_cast<std::size_t>(grid.n)) raise(ErrorKind::InvalidArgument, "scale parameter count must equal n");
  if (!(p >= 1.0)) raise(ErrorKind::InvalidArgument, "L_p exponent must lie in [1, inf]");
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) raise(ErrorKind::InvalidArgument, "lambda must be finite");
  for (const auto& term : lower_terms) {
    if (term.alpha.size() != static_cast<std::size_t>(grid.n)) raise(ErrorKind::InvalidArgument, "lower-term multi-index dimension must equal n");
    if (!(term.alpha.order() < symbol.m)) {
      std::ostringstream os;
      os << "lower-term order |alpha| = " << term.alpha.order() << " must be below m = " << symbol.m;
      raise(ErrorKind::InvalidArgument, os.str());
    }
    if (term.coefficients.size() != 1 && term.coefficients.size() != grid.points()) {
      raise(ErrorKind::InvalidArgument, "lower-term coefficients must be constant or given per grid point");
    }
    for (const auto& c : term.coefficients) {
      if (c.rows() != N || c.cols() != N || !c.allFinite()) raise(ErrorKind::InvalidArgument, "lower-term coefficient must be a finite N x N matrix");
    }
  }
}

namespace {

void check_field(const EllipticProblem& prob, const SampledField& f) {
  if (!(f.grid() == prob.grid)) raise(ErrorKind::InvalidArgument, "field grid differs from the problem grid");
  if (f.components() != prob.components()) raise(ErrorKind::InvalidArgument, "field component count differs from N");
  if (f.domain() != Domain::physical) raise(ErrorKind::InvalidArgument, "field must be in physical space");
}

SampledField apply_principal(const EllipticProblem& prob, const SampledField& u, cplx lambda) {
  SampledField u_hat = forward_transform(u);
  const auto symbol = symbol_on_grid(prob.symbol, prob.t, prob.grid);
  for (std::size_t k = 0; k < u_hat.points(); ++k) u_hat.vector_view(k) *= symbol[k];
  SampledField out = inverse_transform(u_hat);
  const Matrix& A = prob.model.matrix();
  for (std::size_t k = 0; k < out.points(); ++k) {
    out.vector_view(k) += A * u.vector_view(k) + lambda * u.vector_view(k);
  }
  return out;
}

}  // namespace

// --- ShiftedSolver --------------------------------------------------------------

ShiftedSolver::ShiftedSolver(const OperatorModel& model, double max_condition)
    : model_(model), eigen_route_(model.eigen().condition <= max_condition) {}

void ShiftedSolver::check_shift(cplx shift) const {
  const double scale = std::max(1.0, model_.spectral_norm() + std::abs(shift));
  const auto& mu = model_.eigen().values;
  double dist = kInf;
  for (Eigen::Index j = 0; j < mu.size(); ++j) dist = std::min(dist, std::abs(mu(j) + shift));
  if (dist <= 1e-13 * scale) {
    std::ostringstream os;
    os << "mode matrix A + " << shift << " I is singular";
    raise(ErrorKind::ModeSingular, os.str());
  }
}

Vector ShiftedSolver::solve(cplx shift, const Vector& rhs) const {
  check_shift(shift);
  const auto& cache = model_.eigen();
  if (eigen_route_) {
    Vector w = cache.inverse * rhs;
    for (Eigen::Index j = 0; j < w.size(); ++j) w(j) /= cache.values(j) + shift;
    return cache.vectors * w;
  }
  Matrix shifted = model_.matrix();
  shifted.diagonal().array() += shift;
  Eigen::PartialPivLU<Matrix> lu(shifted);
  if (!(lu.rcond() > 1e-14)) {
    std::ostringstream os;
    os << "mode matrix A + " << shift << " I is numerically singular";
    raise(ErrorKind::ModeSingular, os.str());
  }
  return lu.solve(rhs);
}

Matrix ShiftedSolver::inverse(cplx shift) const {
  const int N = model_.dimension();
  if (eigen_route_) {
    check_shift(shift);
    const auto& cache = model_.eigen();
    Vector d(N);
    for (int j = 0; j < N; ++j) d(j) = 1.0 / (cache.values(j) + shift);
    return cache.vectors * d.asDiagonal() * cache.inverse;
  }
  Matrix out(N, N);
  for (int j = 0; j < N; ++j) out.col(j) = solve(shift, Vector::Unit(N, j));
  return out;
}

// --- solves ---------------------------------------------------------------------

std::vector<cplx> symbol_on_grid(const SymbolSpec& symbol, const ScaleParams& t, const GridSpec& grid) {
  std::vector<cplx> out(grid.points());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = eval_symbol(symbol, t, grid.frequency_of(k));
  return out;
}

SampledField solve_principal(const EllipticProblem& prob, const SampledField& f) {
  prob.validate();
  check_field(prob, f);
  SampledField f_hat = forward_transform(f);
  const auto symbol = symbol_on_grid(prob.symbol, prob.t, prob.grid);
  const ShiftedSolver solver(prob.model);
  for (std::size_t k = 0; k < f_hat.points(); ++k) {
    try {
      f_hat.vector_view(k) = solver.solve(prob.lambda + symbol[k], Vector(f_hat.vector_view(k)));
    } catch (const Error& e) {
      std::ostringstream os;
      os << e.what() << " at xi = (";
      const auto xi = prob.grid.frequency_of(k);
      for (std::size_t d = 0; d < xi.size(); ++d) os << (d ? ", " : "") << xi[d];
      os << ")";
      raise(ErrorKind::ModeSingular, os.str());
    }
  }
  return inverse_transform(f_hat);
}

SampledField apply_lower_terms(const EllipticProblem& prob, const SampledField& u) {
  check_field(prob, u);
  SampledField out(prob.grid, prob.components(), u.q());
  for (const auto& term : prob.lower_terms) {
    const SampledField du = term.alpha.is_zero() ? u : liouville_derivative(u, term.alpha);
    const double weight = prob.t.weight(term.alpha, prob.symbol.m);
    for (std::size_t k = 0; k < out.points(); ++k) {
      out.vector_view(k) += weight * (term.at(k) * du.vector_view(k));
    }
  }
  return out;
}

SampledField apply_operator(const EllipticProblem& prob, const SampledField& u) {
  prob.validate();
  check_field(prob, u);
  SampledField out = apply_principal(prob, u, prob.lambda);
  if (!prob.lower_terms.empty()) out += apply_lower_terms(prob, u);
  return out;
}

// --- contraction ----------------------------------------------------------------

ContractionEstimate contraction_estimate(const EllipticProblem& prob, std::uint64_t seed, std::size_t random_probes) {
  prob.validate();
  ContractionEstimate est;
  if (prob.lower_terms.empty()) return est;

  const GridSpec& grid = prob.grid;
  const int N = prob.components();
  const double q = prob.model.q();
  const double p = prob.p;
  const auto symbol = symbol_on_grid(prob.symbol, prob.t, grid);
  const ShiftedSolver solver(prob.model);
  const bool all_constant =
      std::all_of(prob.lower_terms.begin(), prob.lower_terms.end(), [](const LowerTerm& t) { return t.is_constant(); });
  const int band = all_constant ? grid.M / 2 : (grid.M + 3) / 4;

  std::vector<double> weights;
  for (const auto& term : prob.lower_terms) weights.push_back(prob.t.weight(term.alpha, prob.symbol.m));

  // Single-mode probes: e^{i xi x} v maps to e^{i xi x} sum c_alpha A_alpha(x) B(xi) v.
  std::vector<int> idx(static_cast<std::size_t>(grid.n));
  for (std::size_t k = 0; k < grid.points(); ++k) {
    if (grid.touches_nyquist(k)) continue;
    grid.unflatten(k, idx);
    bool inside = true;
    for (int j : idx) inside = inside && std::abs(grid.wavenumber(j)) <= band;
    if (!inside) continue;
    const auto xi = grid.frequency_of(k);
    const Matrix B = solver.inverse(prob.lambda + symbol[k]);
    std::vector<cplx> c(prob.lower_terms.size());
    for (std::size_t a = 0; a < c.size(); ++a) c[a] = weights[a] * i_xi_power(xi, prob.lower_terms[a].alpha);

    if (all_constant) {
      Matrix K = Matrix::Zero(N, N);
      for (std::size_t a = 0; a < c.size(); ++a) K += c[a] * prob.lower_terms[a].coefficients.front();
      est.value = std::max(est.value, operator_norm(K * B, q).lower);
      ++est.probes;
      continue;
    }

    Matrix mean = Matrix::Zero(N, N);
    for (std::size_t a = 0; a < c.size(); ++a) {
      Matrix avg = Matrix::Zero(N, N);
      for (std::size_t x = 0; x < grid.points(); ++x) avg += prob.lower_terms[a].at(x);
      mean += c[a] * avg / static_cast<double>(grid.points());
    }
    std::vector<Vector> candidates;
    for (int j = 0; j < N; ++j) candidates.push_back(Vector::Unit(N, j));
    candidates.push_back(norm_maximizer(B, q));
    candidates.push_back(norm_maximizer(mean * B, q));
    for (auto& v : candidates) {
      const double vn = vector_norm(v, q);
      if (vn == 0.0) continue;
      const Vector w = B * (v / vn);
      double acc = 0.0;
      for (std::size_t x = 0; x < grid.points(); ++x) {
        Vector y = Vector::Zero(N);
        for (std::size_t a = 0; a < c.size(); ++a) y += c[a] * (prob.lower_terms[a].at(x) * w);
        const double yn = vector_norm(y, q);
        acc = std::isinf(p) ? std::max(acc, yn) : acc + std::pow(yn, p);
      }
      const double ratio = std::isinf(p) ? acc : std::pow(acc / static_cast<double>(grid.points()), 1.0 / p);
      est.value = std::max(est.value, ratio);
      ++est.probes;
    }
  }

  // Random band-limited probes.
  std::mt19937_64 rng(seed);
  const int kmax = std::max(1, (grid.M + 7) / 8);
  for (std::size_t r = 0; r < random_probes; ++r) {
    const SampledField probe = random_band_limited(grid, N, kmax, rng, q);
    const double pn = lp_lq_norm(probe, p);
    if (pn == 0.0) continue;
    const SampledField image = apply_lower_terms(prob, solve_principal(prob, probe));
    est.value = std::max(est.value, lp_lq_norm(image, p) / pn);
    ++est.probes;
  }
  return est;
}

FullSolveReport solve_full(const EllipticProblem& prob, const SampledField& f, double tol, int max_iter) {
  prob.validate();
  check_field(prob, f);
  if (!(tol > 0.0)) raise(ErrorKind::InvalidArgument, "tolerance must be positive");
  if (max_iter < 1) raise(ErrorKind::InvalidArgument, "max_iter must be at least 1");

  FullSolveReport rep;
  const double fn = lp_lq_norm(f, prob.p);
  if (prob.lower_terms.empty()) {
    rep.u = solve_principal(prob, f);
    rep.iterations = 1;
    rep.residual = fn == 0.0 ? 0.0 : lp_lq_norm(apply_operator(prob, rep.u) - f, prob.p) / fn;
    rep.history.push_back(rep.residual);
    return rep;
  }

  rep.contraction = contraction_estimate(prob).value;
  if (!(rep.contraction < 1.0)) {
    std::ostringstream os;
    os << "contraction estimate " << rep.contraction << " >= 1 at |lambda| = " << std::abs(prob.lambda)
       << "; the perturbation scheme needs larger |lambda|";
    raise(ErrorKind::ContractionFailure, os.str());
  }
  if (fn == 0.0) {
    rep.u = SampledField(prob.grid, prob.components(), f.q());
    return rep;
  }

  rep.u = solve_principal(prob, f);
  for (int it = 1; it <= max_iter; ++it) {
    rep.iterations = it;
    rep.residual = lp_lq_norm(apply_operator(prob, rep.u) - f, prob.p) / fn;
    rep.history.push_back(rep.residual);
    if (rep.residual < tol) return rep;
    rep.u = solve_principal(prob, f - apply_lower_terms(prob, rep.u));
  }
  std::ostringstream os;
  os << "Neumann iteration stalled at residual " << rep.residual << " after " << max_iter << " iterations";
  raise(ErrorKind::NoConvergence, os.str());
}

// --- graph norm -----------------------------------------------------------------

GraphNormReport graph_norm(const EllipticProblem& prob, const SampledField& u) {
  prob.validate();
  check_field(prob, u);
  GraphNormReport rep;
  rep.graph = lp_lq_norm(apply_principal(prob, u, cplx(1.0, 0.0)), prob.p);
  rep.sobolev = h_m_pt_norm(u, prob.t, prob.symbol.m, prob.p, &prob.model.matrix()).total();
  if (rep.graph > 0.0) {
    rep.ratio = rep.sobolev / rep.graph;
  } else {
    rep.ratio = rep.sobolev == 0.0 ? 1.0 : kInf;
  }
  return rep;
}

// --- index sets and hypotheses ----------------------------------------------------

std::vector<MultiIndex> default_index_set(std::size_t n, double m) {
  if (n == 0) raise(ErrorKind::InvalidArgument, "dimension must be positive");
  if (!(m > 0.0)) raise(ErrorKind::InvalidArgument, "order m must be positive");
  std::vector<MultiIndex> out;
  if (m == std::floor(m)) {
    const int order = static_cast<int>(m);
    std::vector<double> comp(n, 0.0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
      if (k == n) {
        out.emplace_back(comp);
        return;
      }
      for (int v = 0; v <= left; ++v) {
        comp[k] = v;
        rec(k + 1, left - v);
      }
      comp[k] = 0.0;
    };
    rec(0, order);
    std::sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
      if (a.order() != b.order()) return a.order() < b.order();
      return std::lexicographical_compare(a.components().begin(), a.components().end(), b.components().begin(),
                                          b.components().end(), std::greater<double>());
    });
    return out;
  }
  out.push_back(MultiIndex::zero(n));
  for (std::size_t k = 0; k < n; ++k) out.push_back(MultiIndex::axis(n, k, 0.5 * m));
  for (std::size_t k = 0; k < n; ++k) out.push_back(MultiIndex::axis(n, k, m));
  return out;
}

void check_angle_hypotheses(double phi1, double phi2, double phi) {
  if (!(phi1 >= 0.0) || !(phi2 >= 0.0)) raise(ErrorKind::Validation, "sector angles phi1 and phi2 must be nonnegative");
  const double sum = phi1 + phi2;
  if (!(sum < kPi)) {
    std::ostringstream os;
    os << "angle hypothesis phi1 + phi2 < pi violated: phi1 + phi2 = " << sum;
    raise(ErrorKind::AngleSumTooLarge, os.str());
  }
  if (sum > phi + 1e-12) {
    std::ostringstream os;
    os << "angle hypothesis phi1 + phi2 <= phi violated: phi1 + phi2 = " << sum << " exceeds phi = " << phi;
    raise(ErrorKind::Validation, os.str());
  }
}

PositivityCertificate certify_angles(const OperatorModel& model, double phi1, double phi2, double phi) {
  check_angle_hypotheses(phi1, phi2, phi);
  const double angle = phi1 + phi2;
  std::vector<double> rays = angle > 0.0 ? std::vector<double>{-angle, 0.0, angle} : std::vector<double>{0.0};
  std::vector<double> radii = {0.0};
  for (double r : log_space(1e-2, 1e6, 17)) radii.push_back(r);
  const SectorSweep sweep(angle, rays, radii, {ScaleParams::isotropic(1, 1.0)});
  PositivityCertificate cert = check_positivity(model, angle, sweep);
  if (!cert.ok) {
    std::ostringstream os;
    os << "operator is not positive on the sector of angle phi1 + phi2 = " << angle << ": " << cert.failure;
    raise(ErrorKind::Validation, os.str());
  }
  return cert;
}

}  // namespace psdo
