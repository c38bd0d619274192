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
#include "psdo/operators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "psdo/errors.hpp"
#include "psdo/spaces.hpp"

namespace psdo {

namespace {

double largest_singular_value(const Matrix& T) {
  if (T.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(T);
  return svd.singularValues()(0);
}

double column_sum_norm(const Matrix& T) { return T.cwiseAbs().colwise().sum().maxCoeff(); }
double row_sum_norm(const Matrix& T) { return T.cwiseAbs().rowwise().sum().maxCoeff(); }

// Unit-dual vector: <d, v> = ||v||_p with ||d||_{p'} = 1.
Vector dual_vector(const Vector& v, double p) {
  Vector d = Vector::Zero(v.size());
  const double nv = vector_norm(v, p);
  if (nv == 0.0) return d;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a == 0.0) continue;
    d(i) = std::pow(a / nv, p - 1.0) * (std::conj(v(i)) / a);
  }
  return d;
}

Vector normalized(Vector v, double q) {
  const double n = vector_norm(v, q);
  if (n > 0.0) v /= n;
  return v;
}

}  // namespace

// --- OperatorModel ------------------------------------------------------------

OperatorModel OperatorModel::from_matrix(Matrix A, double q) {
  if (A.rows() != A.cols() || A.rows() == 0) raise(ErrorKind::InvalidArgument, "operator matrix must be square and nonempty");
  if (!A.allFinite()) raise(ErrorKind::InvalidArgument, "operator matrix entries must be finite");
  if (!(q >= 1.0)) raise(ErrorKind::InvalidArgument, "l_q exponent must lie in [1, inf]");

  OperatorModel model;
  model.q_ = q;
  model.spectral_norm_ = largest_singular_value(A);
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  model.symmetric_ = (A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
  const bool real = A.imag().cwiseAbs().maxCoeff() == 0.0;

  EigenCache& cache = model.eigen_;
  if (model.symmetric_ && real) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(A.real());
    cache.values = solver.eigenvalues().cast<cplx>();
    cache.vectors = solver.eigenvectors().cast<cplx>();
    cache.inverse = cache.vectors.adjoint();
    cache.condition = 1.0;
  } else {
    Eigen::ComplexEigenSolver<Matrix> solver(A);
    cache.values = solver.eigenvalues();
    cache.vectors = solver.eigenvectors();
    Eigen::JacobiSVD<Matrix> svd(cache.vectors);
    const auto& s = svd.singularValues();
    const double smin = s(s.size() - 1);
    if (smin > 0.0) {
      cache.condition = s(0) / smin;
      cache.inverse = cache.vectors.fullPivLu().inverse();
    } else {
      cache.condition = kInf;
    }
  }

  const double imag_tol = 1e-10 * std::max(1.0, model.spectral_norm_);
  bool positive = model.diagonalizable();
  for (Eigen::Index j = 0; j < cache.values.size(); ++j) {
    if (std::abs(cache.values(j).imag()) > imag_tol || !(cache.values(j).real() > 0.0)) positive = false;
  }
  model.positive_definite_ = positive;
  model.matrix_ = std::move(A);
  return model;
}

double OperatorModel::min_eigenvalue() const {
  double m = kInf;
  for (Eigen::Index j = 0; j < eigen_.values.size(); ++j) m = std::min(m, eigen_.values(j).real());
  return m;
}

OperatorModel OperatorModel::with_q(double q) const {
  if (!(q >= 1.0)) raise(ErrorKind::InvalidArgument, "l_q exponent must lie in [1, inf]");
  OperatorModel copy(*this);
  copy.q_ = q;
  return copy;
}

// --- resolvent ----------------------------------------------------------------

Matrix resolvent(const OperatorModel& model, cplx lambda) {
  const auto& mu = model.eigen().values;
  double dist = kInf;
  for (Eigen::Index j = 0; j < mu.size(); ++j) dist = std::min(dist, std::abs(mu(j) + lambda));
  if (dist == 0.0 || dist <= 1e-12 * model.spectral_norm()) {
    std::ostringstream os;
    os << "-lambda = " << -lambda << " lies on the spectrum (distance " << dist << ")";
    raise(ErrorKind::SpectrumHit, os.str());
  }
  const int N = model.dimension();
  Matrix shifted = model.matrix();
  shifted.diagonal().array() += lambda;
  const Matrix identity = Matrix::Identity(N, N);
  Matrix inverse = shifted.partialPivLu().solve(identity);
  const double residual = (shifted * inverse - identity).cwiseAbs().maxCoeff();
  if (!(residual < 1e-10)) {
    std::ostringstream os;
    os << "resolvent residual " << residual << " at lambda = " << lambda;
    raise(ErrorKind::SpectrumHit, os.str());
  }
  return inverse;
}

// --- operator norms -------------------------------------------------------------

Vector norm_maximizer(const Matrix& T, double q) {
  const Eigen::Index n = T.cols();
  if (n == 0) return Vector();
  if (q == 1.0) {
    Eigen::Index j = 0;
    T.cwiseAbs().colwise().sum().maxCoeff(&j);
    return Vector::Unit(n, j);
  }
  if (std::isinf(q)) {
    Eigen::Index i = 0;
    T.cwiseAbs().rowwise().sum().maxCoeff(&i);
    Vector x(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = std::abs(T(i, j));
      x(j) = a > 0.0 ? std::conj(T(i, j)) / a : cplx(1.0, 0.0);
    }
    return x;
  }
  if (q == 2.0) {
    Eigen::JacobiSVD<Matrix> svd(T, Eigen::ComputeFullV);
    return svd.matrixV().col(0);
  }

  // Nonlinear power iteration for the l_q operator norm from several starts.
  const double q_dual = q / (q - 1.0);
  std::vector<Vector> starts = {norm_maximizer(T, 1.0), norm_maximizer(T, 2.0), norm_maximizer(T, kInf)};
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> normal;
  for (int s = 0; s < 6; ++s) {
    Vector v(n);
    for (Eigen::Index j = 0; j < n; ++j) v(j) = cplx(normal(rng), normal(rng));
    starts.push_back(v);
  }
  Vector best = normalized(starts.front(), q);
  double best_ratio = vector_norm(Vector(T * best), q);
  for (auto& start : starts) {
    Vector x = normalized(start, q);
    double ratio = vector_norm(Vector(T * x), q);
    for (int it = 0; it < 100; ++it) {
      const Vector y = T * x;
      if (vector_norm(y, q) == 0.0) break;
      const Vector z = T.adjoint() * dual_vector(y, q).conjugate();
      const Vector next = normalized(dual_vector(z, q_dual).conjugate(), q);
      const double r = vector_norm(Vector(T * next), q);
      if (!(r > ratio * (1.0 + 1e-15))) break;
      x = next;
      ratio = r;
    }
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = x;
    }
  }
  return best;
}

NormBracket operator_norm(const Matrix& T, double q) {
  if (!(q >= 1.0)) raise(ErrorKind::InvalidArgument, "l_q exponent must lie in [1, inf]");
  if (T.size() == 0) return {0.0, 0.0};
  if (q == 1.0) {
    const double v = column_sum_norm(T);
    return {v, v};
  }
  if (std::isinf(q)) {
    const double v = row_sum_norm(T);
    return {v, v};
  }
  const double n2 = largest_singular_value(T);
  if (q == 2.0) return {n2, n2};

  const double n1 = column_sum_norm(T);
  const double ninf = row_sum_norm(T);
  double upper = std::pow(n1, 1.0 / q) * std::pow(ninf, 1.0 - 1.0 / q);
  if (q > 2.0) {
    upper = std::min(upper, std::pow(n2, 2.0 / q) * std::pow(ninf, 1.0 - 2.0 / q));
  } else {
    upper = std::min(upper, std::pow(n1, 2.0 / q - 1.0) * std::pow(n2, 2.0 - 2.0 / q));
  }
  const Vector x = norm_maximizer(T, q);
  const double lower = std::min(upper, vector_norm(Vector(T * x), q) / vector_norm(x, q));
  return {lower, upper};
}

// --- positivity ---------------------------------------------------------------

PositivityCertificate check_positivity(const OperatorModel& model, double phi, const SectorSweep& sweep) {
  for (double r : sweep.rays()) {
    if (std::abs(r) > phi + 1e-12) raise(ErrorKind::InvalidArgument, "positivity sweep ray outside [-phi, phi]");
  }
  PositivityCertificate cert;
  cert.angle = phi;
  cert.constant = 0.0;
  for (double ray : sweep.rays()) {
    for (double radius : sweep.radii()) {
      const cplx lambda = std::polar(radius, ray);
      Matrix R;
      try {
        R = resolvent(model, lambda);
      } catch (const Error& e) {
        cert.ok = false;
        cert.constant = kInf;
        cert.worst_lambda = lambda;
        cert.failure = e.what();
        return cert;
      }
      const double value = (1.0 + radius) * operator_norm(R, model.q()).upper;
      ++cert.points;
      if (value > cert.constant) {
        cert.constant = value;
        cert.worst_lambda = lambda;
      }
    }
  }
  cert.ok = std::isfinite(cert.constant);
  return cert;
}

// --- functional calculus --------------------------------------------------------

Matrix fractional_power(const OperatorModel& model, double theta) {
  if (!model.diagonalizable()) {
    raise(ErrorKind::NotDiagonalizable, "eigenvector condition number exceeds 1e6");
  }
  const auto& cache = model.eigen();
  Vector powers(cache.values.size());
  for (Eigen::Index j = 0; j < cache.values.size(); ++j) {
    if (!(cache.values(j).real() > 0.0)) {
      std::ostringstream os;
      os << "eigenvalue " << cache.values(j) << " outside the open right half-plane";
      raise(ErrorKind::SpectrumNotSectorial, os.str());
    }
    powers(j) = std::pow(cache.values(j), theta);
  }
  return cache.vectors * powers.asDiagonal() * cache.inverse;
}

// --- builders -----------------------------------------------------------------

OperatorModel build_system(const RealMatrix& a, double q) {
  if (a.rows() != a.cols() || a.rows() == 0) raise(ErrorKind::InvalidArgument, "system matrix must be square and nonempty");
  if (!a.allFinite()) raise(ErrorKind::InvalidArgument, "system matrix entries must be finite");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    raise(ErrorKind::NotSymmetric, "system coefficients must satisfy a_ij = a_ji");
  }
  OperatorModel model = OperatorModel::from_matrix(a.cast<cplx>(), q);
  const double c0 = model.min_eigenvalue();
  if (!(c0 > 0.0)) {
    std::ostringstream os;
    os << "smallest eigenvalue C0 = " << c0 << " is not positive";
    raise(ErrorKind::NotPositiveDefinite, os.str());
  }
  return model;
}

RealMatrix tridiagonal(int N, double lower, double diagonal, double upper) {
  if (N < 1) raise(ErrorKind::InvalidArgument, "tridiagonal dimension must be positive");
  RealMatrix a = RealMatrix::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    a(i, i) = diagonal;
    if (i > 0) a(i, i - 1) = lower;
    if (i + 1 < N) a(i, i + 1) = upper;
  }
  return a;
}

OperatorModel build_bvp_operator(const BvpSpec& spec) {
  if (spec.points < 3) raise(ErrorKind::InvalidArgument, "BVP discretization needs at least 3 points");
  if (!(spec.length > 0.0)) raise(ErrorKind::InvalidArgument, "BVP interval length must be positive");
  const int K = spec.points;
  const double h = spec.length / (K - 1);
  for (int i = 0; i < K; ++i) {
    const double b2 = spec.b2(i * h);
    if (!(b2 > 0.0)) {
      std::ostringstream os;
      os << "leading coefficient b2(" << i * h << ") = " << b2 << " is not positive";
      raise(ErrorKind::EllipticityFailure, os.str());
    }
  }
  const int n = K - 2;
  RealMatrix a = RealMatrix::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    const double y = (r + 1) * h;
    const double b2 = spec.b2(y);
    const double b1 = spec.b1(y);
    a(r, r) = 2.0 * b2 / (h * h) + spec.b0(y);
    if (r > 0) a(r, r - 1) = -b2 / (h * h) - b1 / (2.0 * h);
    if (r + 1 < n) a(r, r + 1) = -b2 / (h * h) + b1 / (2.0 * h);
  }
  return OperatorModel::from_matrix(a.cast<cplx>(), spec.q);
}

}  // namespace psdo
