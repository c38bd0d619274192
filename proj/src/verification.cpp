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
#include "psdo/verification.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <tuple>

#include "psdo/errors.hpp"
#include "psdo/parallel.hpp"

namespace psdo {

using nlohmann::json;

namespace {
// Every kRboundStride-th frequency sample enters the R-bound families.
constexpr std::size_t kRboundStride = 4;
}  // namespace

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "unknown";
}

// --- reports --------------------------------------------------------------------

namespace {

json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

Verdict judge(const ReportSummary& s, const Thresholds& th) {
  if (s.points == 0) return Verdict::not_applicable;
  if (s.failures > 0) return Verdict::fail;
  const bool ok = std::isfinite(s.max_ratio) && s.max_ratio <= th.max_ratio && s.flatness <= th.flatness;
  return ok ? Verdict::pass : Verdict::fail;
}

const char* point_verdict(const PointRecord& p, const Thresholds& th) {
  if (!p.ok) return "error";
  return std::isfinite(p.ratio) && p.ratio <= th.max_ratio ? "pass" : "fail";
}

}  // namespace

void VerificationReport::finalize() {
  summary = ReportSummary{};
  summary.points = points.size();
  std::vector<double> ratios;
  for (const auto& p : points) {
    if (!p.ok) {
      ++summary.failures;
      continue;
    }
    if (ratios.empty() || p.ratio > summary.max_ratio) {
      summary.max_ratio = p.ratio;
      summary.worst_index = p.index;
    }
    ratios.push_back(p.ratio);
  }
  if (!ratios.empty()) {
    std::sort(ratios.begin(), ratios.end());
    const std::size_t n = ratios.size();
    summary.median_ratio = n % 2 ? ratios[n / 2] : 0.5 * (ratios[n / 2 - 1] + ratios[n / 2]);
    if (summary.median_ratio > 0.0) {
      summary.flatness = summary.max_ratio / summary.median_ratio;
    } else {
      summary.flatness = summary.max_ratio == 0.0 ? 1.0 : kInf;
    }
  }
  verdict = judge(summary, thresholds);
}

json to_json(const VerificationReport& report) {
  json j;
  j["kind"] = report.kind;
  j["verdict"] = to_string(report.verdict);
  j["thresholds"] = {{"max_ratio", number(report.thresholds.max_ratio)},
                     {"flatness", number(report.thresholds.flatness)}};
  const auto& s = report.summary;
  j["summary"] = {{"points", s.points},
                  {"failures", s.failures},
                  {"max_ratio", number(s.max_ratio)},
                  {"median_ratio", number(s.median_ratio)},
                  {"flatness", number(s.flatness)},
                  {"worst_index", s.worst_index}};
  j["notes"] = report.notes;
  if (!report.extra.is_null()) j["extra"] = report.extra;
  json pts = json::array();
  for (const auto& p : report.points) {
    json e = {{"index", p.index},
              {"ray", number(p.ray)},
              {"radius", number(p.radius)},
              {"t", p.t},
              {"ratio", number(p.ratio)},
              {"residual", number(p.residual)},
              {"verdict", point_verdict(p, report.thresholds)}};
    if (!p.ok) e["failure"] = p.failure;
    if (!p.detail.is_null()) e["detail"] = p.detail;
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  return j;
}

std::string to_csv(const VerificationReport& report) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "ray,radius,t,ratio,residual,verdict\n";
  for (const auto& p : report.points) {
    os << p.ray << ',' << p.radius << ',';
    for (std::size_t k = 0; k < p.t.size(); ++k) os << (k ? ";" : "") << p.t[k];
    os << ',' << p.ratio << ',' << p.residual << ',' << point_verdict(p, report.thresholds) << '\n';
  }
  return os.str();
}

std::mt19937_64 point_rng(std::uint64_t seed, std::size_t index) {
  const auto i = static_cast<std::uint64_t>(index);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
  return std::mt19937_64(seq);
}

// --- coercivity -------------------------------------------------------------------

namespace {

double lambda_weight(const EllipticProblem& prob, const MultiIndex& alpha) {
  return prob.t.weight(alpha, prob.symbol.m) * std::pow(std::abs(prob.lambda), 1.0 - alpha.order() / prob.symbol.m);
}

double abs_xi_power(std::span<const double> xi, const MultiIndex& alpha) { return std::abs(i_xi_power(xi, alpha)); }

std::vector<MultiIndex> resolve_index_set(const VerificationOptions& options, std::size_t n, double m) {
  return options.index_set.empty() ? default_index_set(n, m) : options.index_set;
}

Vector normalized_or_unit(const Vector& v, double q) {
  const double n = vector_norm(v, q);
  return n > 0.0 ? Vector(v / n) : Vector(Vector::Unit(v.size(), 0));
}

bool normal_l2(const OperatorModel& model) { return model.q() == 2.0 && model.normal(); }

// ||(A + s)^-1||_2 and ||A (A + s)^-1||_2 from the spectrum of a normal A.
std::pair<double, double> normal_mode_norms(const OperatorModel& model, cplx shift) {
  const auto& mu = model.eigen().values;
  double nb = 0.0, nab = 0.0;
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    const double d = std::abs(mu(j) + shift);
    if (d <= 1e-13 * std::max(1.0, model.spectral_norm() + std::abs(shift))) {
      raise(ErrorKind::ModeSingular, "mode matrix is singular");
    }
    nb = std::max(nb, 1.0 / d);
    nab = std::max(nab, std::abs(mu(j)) / d);
  }
  return {nb, nab};
}

PointRecord make_record(const SweepPoint& pt) {
  PointRecord r;
  r.index = pt.index;
  r.ray = pt.ray;
  r.radius = pt.radius;
  r.t.assign(pt.t.values().begin(), pt.t.values().end());
  return r;
}

void check_sweep(const EllipticProblem& base, const SectorSweep& sweep) {
  base.validate();
  for (const auto& t : sweep.t_grid()) {
    if (t.size() != static_cast<std::size_t>(base.grid.n)) raise(ErrorKind::InvalidArgument, "sweep scale parameters must have n entries");
  }
}

}  // namespace

double coercive_ratio(const EllipticProblem& prob, const SampledField& u, const SampledField& f,
                      std::span<const MultiIndex> index_set) {
  const double fn = lp_lq_norm(f, prob.p);
  if (fn == 0.0) raise(ErrorKind::DivisionByZero, "data field vanishes; coercive ratio not applicable");
  const SampledField u_hat = forward_transform(u);
  double num = 0.0;
  for (const auto& alpha : index_set) {
    const double w = lambda_weight(prob, alpha);
    if (w == 0.0) continue;
    const SampledField du = alpha.is_zero() ? u : inverse_transform(liouville_multiply(u_hat, alpha));
    num += w * lp_lq_norm(du, prob.p);
  }
  num += lp_lq_norm(apply_matrix(prob.model.matrix(), u), prob.p);
  return num / fn;
}

WorstMode find_worst_mode(const EllipticProblem& prob, std::span<const MultiIndex> index_set, std::mt19937_64& rng) {
  const GridSpec& grid = prob.grid;
  const int N = prob.components();
  const double q = prob.model.q();
  const Matrix& A = prob.model.matrix();
  const ShiftedSolver solver(prob.model);
  const auto symbol = symbol_on_grid(prob.symbol, prob.t, grid);

  std::vector<Vector> base;
  for (int j = 0; j < N; ++j) base.push_back(prob.model.eigen().vectors.col(j));
  for (int j = 0; j < N; ++j) base.push_back(Vector::Unit(N, j));
  std::normal_distribution<double> normal;
  for (int r = 0; r < 2; ++r) {
    Vector v(N);
    for (int j = 0; j < N; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      v(j) = cplx(re, im);
    }
    base.push_back(v);
  }
  std::vector<double> weights;
  for (const auto& alpha : index_set) weights.push_back(lambda_weight(prob, alpha));

  WorstMode best;
  best.ratio = -1.0;
  std::size_t best_k = 0;
  for (std::size_t k = 0; k < grid.points(); ++k) {
    if (grid.touches_nyquist(k)) continue;
    const auto xi = grid.frequency_of(k);
    double w = 0.0;
    for (std::size_t a = 0; a < index_set.size(); ++a) {
      if (weights[a] != 0.0) w += weights[a] * abs_xi_power(xi, index_set[a]);
    }
    if (normal_l2(prob.model)) {
      // Eigenvectors of a normal A diagonalize every mode matrix.
      const auto& mu = prob.model.eigen().values;
      for (int j = 0; j < N; ++j) {
        const double d = std::abs(mu(j) + prob.lambda + symbol[k]);
        if (d == 0.0) raise(ErrorKind::ModeSingular, "mode matrix is singular");
        const double ratio = (w + std::abs(mu(j))) / d;
        if (ratio > best.ratio) {
          best.ratio = ratio;
          best.direction = prob.model.eigen().vectors.col(j);
          best_k = k;
        }
      }
      continue;
    }
    const Matrix B = solver.inverse(prob.lambda + symbol[k]);
    const Matrix AB = A * B;
    std::vector<Vector> candidates = base;
    candidates.push_back(norm_maximizer(B, q));
    candidates.push_back(norm_maximizer(AB, q));
    for (const auto& v : candidates) {
      const double vn = vector_norm(v, q);
      if (vn == 0.0) continue;
      const Vector bv = B * v;
      const double ratio = (w * vector_norm(bv, q) + vector_norm(Vector(A * bv), q)) / vn;
      if (ratio > best.ratio) {
        best.ratio = ratio;
        best.direction = v / vn;
        best_k = k;
      }
    }
  }
  std::vector<int> idx(static_cast<std::size_t>(grid.n));
  grid.unflatten(best_k, idx);
  for (int j : idx) best.wavenumbers.push_back(grid.wavenumber(j));
  return best;
}

std::vector<SampledField> generate_data(const EllipticProblem& prob, std::span<const MultiIndex> index_set,
                                        int band_limited, std::mt19937_64& rng) {
  const GridSpec& grid = prob.grid;
  const int N = prob.components();
  const double q = prob.model.q();
  Vector ones = Vector::Ones(N);
  Vector alternating(N);
  for (int j = 0; j < N; ++j) alternating(j) = j % 2 ? -1.0 : 1.0;

  std::vector<SampledField> data;
  data.push_back(gaussian_field(grid, ones, grid.L / 16.0, q));
  data.push_back(gaussian_field(grid, alternating, grid.L / 32.0, q));
  const int kmax = (grid.M + 7) / 8;
  for (int b = 0; b < band_limited; ++b) data.push_back(random_band_limited(grid, N, kmax, rng, q));
  const WorstMode worst = find_worst_mode(prob, index_set, rng);
  data.push_back(mode_field(grid, worst.wavenumbers, worst.direction, q));
  return data;
}

VerificationReport coercivity_sweep(const EllipticProblem& base, const SectorSweep& sweep,
                                    const VerificationOptions& options) {
  check_sweep(base, sweep);
  const auto index_set = resolve_index_set(options, static_cast<std::size_t>(base.grid.n), base.symbol.m);
  VerificationReport report;
  report.kind = "coercivity";
  report.thresholds = options.thresholds;
  report.points.resize(sweep.size());
  parallel_for(sweep.size(), options.threads, [&](std::size_t i) {
    const SweepPoint pt = sweep.point(i);
    PointRecord r = make_record(pt);
    try {
      EllipticProblem prob = base;
      prob.lambda = pt.lambda();
      prob.t = pt.t;
      auto rng = point_rng(options.seed, i);
      for (const auto& f : generate_data(prob, index_set, options.band_limited, rng)) {
        const SampledField u = prob.lower_terms.empty() ? solve_principal(prob, f) : solve_full(prob, f).u;
        r.ratio = std::max(r.ratio, coercive_ratio(prob, u, f, index_set));
        r.residual = std::max(r.residual, lp_lq_norm(apply_operator(prob, u) - f, prob.p) / lp_lq_norm(f, prob.p));
      }
    } catch (const Error& e) {
      r.ok = false;
      r.failure = std::string(to_string(e.kind())) + ": " + e.what();
    }
    report.points[i] = std::move(r);
  });
  report.notes.push_back("ratios are empirical; pinned reference constants are artifacts of this implementation");
  report.finalize();
  return report;
}

VerificationReport resolvent_sweep(const EllipticProblem& base, const SectorSweep& sweep,
                                   const VerificationOptions& options) {
  check_sweep(base, sweep);
  if (!base.lower_terms.empty()) raise(ErrorKind::InvalidArgument, "resolvent sweep takes the principal operator only");
  const auto index_set = resolve_index_set(options, static_cast<std::size_t>(base.grid.n), base.symbol.m);
  VerificationReport report;
  report.kind = "resolvent";
  report.thresholds = options.thresholds;
  report.points.resize(sweep.size());
  parallel_for(sweep.size(), options.threads, [&](std::size_t i) {
    const SweepPoint pt = sweep.point(i);
    PointRecord r = make_record(pt);
    try {
      EllipticProblem prob = base;
      prob.lambda = pt.lambda();
      prob.t = pt.t;
      const GridSpec& grid = prob.grid;
      const double q = prob.model.q();
      const Matrix& A = prob.model.matrix();
      const ShiftedSolver solver(prob.model);
      const auto symbol = symbol_on_grid(prob.symbol, prob.t, grid);
      std::vector<double> weights;
      for (const auto& alpha : index_set) weights.push_back(lambda_weight(prob, alpha));
      std::vector<double> terms(index_set.size(), 0.0);
      double a_term = 0.0;
      for (std::size_t k = 0; k < grid.points(); ++k) {
        if (grid.touches_nyquist(k)) continue;
        const auto xi = grid.frequency_of(k);
        double nb = 0.0, nab = 0.0;
        if (normal_l2(prob.model)) {
          std::tie(nb, nab) = normal_mode_norms(prob.model, prob.lambda + symbol[k]);
        } else {
          const Matrix B = solver.inverse(prob.lambda + symbol[k]);
          nb = operator_norm(B, q).lower;
          nab = operator_norm(Matrix(A * B), q).lower;
        }
        for (std::size_t a = 0; a < index_set.size(); ++a) {
          if (weights[a] != 0.0) terms[a] = std::max(terms[a], weights[a] * abs_xi_power(xi, index_set[a]) * nb);
        }
        a_term = std::max(a_term, nab);
      }
      auto rng = point_rng(options.seed, i);
      const int kmax = (grid.M + 7) / 8;
      for (int b = 0; b < options.band_limited; ++b) {
        const SampledField f = random_band_limited(grid, prob.components(), kmax, rng, q);
        const double fn = lp_lq_norm(f, prob.p);
        const SampledField u = solve_principal(prob, f);
        const SampledField u_hat = forward_transform(u);
        for (std::size_t a = 0; a < index_set.size(); ++a) {
          if (weights[a] == 0.0) continue;
          const SampledField du =
              index_set[a].is_zero() ? u : inverse_transform(liouville_multiply(u_hat, index_set[a]));
          terms[a] = std::max(terms[a], weights[a] * lp_lq_norm(du, prob.p) / fn);
        }
        a_term = std::max(a_term, lp_lq_norm(apply_matrix(A, u), prob.p) / fn);
        r.residual = std::max(r.residual, lp_lq_norm(apply_operator(prob, u) - f, prob.p) / fn);
      }
      r.ratio = a_term;
      for (double v : terms) r.ratio += v;
      json detail;
      detail["terms"] = terms;
      detail["a_term"] = a_term;
      r.detail = std::move(detail);
    } catch (const Error& e) {
      r.ok = false;
      r.failure = std::string(to_string(e.kind())) + ": " + e.what();
    }
    report.points[i] = std::move(r);
  });
  report.notes.push_back("each term carries the weight t(alpha)|lambda|^(1-|alpha|/m)");
  report.notes.push_back("operator norms are maximized over lattice modes and band-limited probes");
  report.finalize();
  return report;
}

// --- Rademacher averages ---------------------------------------------------------

std::pair<double, double> rademacher_average(std::span<const Matrix> operators, std::span<const Vector> vectors,
                                             double q, RademacherMode mode, std::size_t trials,
                                             std::uint64_t seed) {
  const std::size_t m = operators.size();
  if (m == 0 || vectors.size() != m) raise(ErrorKind::InvalidArgument, "operators and vectors must have the same positive count");
  const Eigen::Index N = vectors[0].size();
  std::vector<Vector> images(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (vectors[j].size() != N || operators[j].rows() != N || operators[j].cols() != N) {
      raise(ErrorKind::InvalidArgument, "operator and vector dimensions differ");
    }
    images[j] = operators[j] * vectors[j];
  }
  Vector s1(N), s0(N);
  auto accumulate = [&](const std::vector<int>& signs, double& num, double& den) {
    s1.setZero();
    s0.setZero();
    for (std::size_t j = 0; j < m; ++j) {
      if (signs[j] > 0) {
        s1 += images[j];
        s0 += vectors[j];
      } else {
        s1 -= images[j];
        s0 -= vectors[j];
      }
    }
    num += vector_norm(s1, q);
    den += vector_norm(s0, q);
  };

  double num = 0.0, den = 0.0;
  std::vector<int> signs(m);
  if (mode == RademacherMode::enumerate) {
    if (m > 20) raise(ErrorKind::TooManyForEnumeration, "enumeration needs at most 20 members");
    const std::uint64_t patterns = 1ULL << m;
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
      for (std::size_t j = 0; j < m; ++j) signs[j] = (mask >> j) & 1ULL ? -1 : 1;
      accumulate(signs, num, den);
    }
    return {num / static_cast<double>(patterns), den / static_cast<double>(patterns)};
  }
  if (trials == 0) raise(ErrorKind::InvalidArgument, "Monte Carlo mode needs at least one trial");
  std::mt19937_64 rng(seed);
  for (std::size_t tr = 0; tr < trials; ++tr) {
    for (std::size_t j = 0; j < m; ++j) signs[j] = (rng() >> 63) ? -1 : 1;
    accumulate(signs, num, den);
  }
  return {num / static_cast<double>(trials), den / static_cast<double>(trials)};
}

RboundEstimate estimate_rbound(std::span<const Matrix> family, double q, std::size_t tuple_size, std::size_t restarts,
                               std::uint64_t seed) {
  RboundEstimate est;
  if (family.empty()) return est;
  if (tuple_size < 1) raise(ErrorKind::InvalidArgument, "tuple size must be positive");
  if (tuple_size > 20) raise(ErrorKind::TooManyForEnumeration, "tuple size must not exceed 20");

  for (std::size_t j = 0; j < family.size(); ++j) {
    const Vector x = norm_maximizer(family[j], q);
    const double xn = vector_norm(x, q);
    ++est.evaluations;
    if (xn == 0.0) continue;
    const double r = vector_norm(Vector(family[j] * x), q) / xn;
    if (r > est.value || est.tuple.empty()) {
      est.value = r;
      est.tuple = {j};
      est.vectors = {x / xn};
    }
  }
  if (tuple_size == 1) return est;

  const Eigen::Index N = family[0].rows();
  auto ratio_of = [&](const std::vector<Matrix>& ops, const std::vector<Vector>& vs) {
    ++est.evaluations;
    const auto [num, den] = rademacher_average(ops, vs, q);
    return den > 0.0 ? num / den : 0.0;
  };
  for (std::size_t r = 0; r < restarts; ++r) {
    for (std::size_t i = 0; i < family.size(); ++i) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(i)};
      std::mt19937_64 rng(seq);
      std::uniform_int_distribution<std::size_t> pick(0, i);
      std::uniform_real_distribution<double> angle(-kPi, kPi);
      std::normal_distribution<double> normal;
      std::vector<std::size_t> tuple = {i};
      while (tuple.size() < tuple_size) tuple.push_back(pick(rng));
      std::vector<Matrix> ops;
      std::vector<Vector> vs;
      for (std::size_t pos : tuple) {
        ops.push_back(family[pos]);
        vs.push_back(std::polar(1.0, angle(rng)) * normalized_or_unit(norm_maximizer(family[pos], q), q));
      }
      double current = ratio_of(ops, vs);
      for (int sweep = 0; sweep < 4; ++sweep) {
        const double step = 0.5 / (1.0 + sweep);
        for (std::size_t j = 0; j < vs.size(); ++j) {
          for (int trial = 0; trial < 3; ++trial) {
            Vector proposal = vs[j];
            for (Eigen::Index c = 0; c < N; ++c) {
              const double re = normal(rng);
              const double im = normal(rng);
              proposal(c) += step * cplx(re, im);
            }
            const Vector saved = vs[j];
            vs[j] = proposal;
            const double value = ratio_of(ops, vs);
            if (value > current) {
              current = value;
            } else {
              vs[j] = saved;
            }
          }
        }
      }
      if (current > est.value) {
        est.value = current;
        est.tuple = tuple;
        est.vectors = vs;
      }
    }
  }
  return est;
}

KahaneResult kahane_contraction_check(std::span<const cplx> scalars, std::span<const Vector> vectors, double q) {
  const std::size_t m = scalars.size();
  if (m == 0 || vectors.size() != m) raise(ErrorKind::InvalidArgument, "scalars and vectors must have the same positive count");
  if (m > 12) raise(ErrorKind::TooManyForEnumeration, "Kahane check enumerates at most 12 members");
  KahaneResult res;
  double s = 0.0;
  for (cplx a : scalars) {
    s = std::max(s, std::abs(a));
    if (a.imag() != 0.0) res.real = false;
  }
  res.bound = res.real ? 1.0 : 2.0;
  const Eigen::Index N = vectors[0].size();
  std::vector<Matrix> ops;
  for (cplx a : scalars) ops.push_back(a * Matrix::Identity(N, N));
  const auto [num, den] = rademacher_average(ops, vectors, q);
  res.constant = (s == 0.0 || den == 0.0) ? 0.0 : num / (s * den);
  res.pass = res.constant <= res.bound + 1e-12;
  return res;
}

// --- multiplier families ------------------------------------------------------------

std::vector<std::vector<double>> multiplier_samples(std::size_t n, std::size_t per_decade) {
  if (n == 0 || per_decade == 0) raise(ErrorKind::InvalidArgument, "sample set needs n >= 1 and per_decade >= 1");
  const auto radii = log_space(1e-3, 1e8, 11 * per_decade + 1);
  std::vector<std::vector<double>> out;
  const std::size_t combos = std::size_t{1} << n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t mask = 0; mask < combos; ++mask) {
    for (double r : radii) {
      std::vector<double> xi(n);
      for (std::size_t k = 0; k < n; ++k) xi[k] = ((mask >> k) & 1 ? -1.0 : 1.0) * r * scale;
      out.push_back(std::move(xi));
    }
  }
  return out;
}

VerificationReport multiplier_family_check(const SymbolSpec& symbol, const OperatorModel& model,
                                           const SectorSweep& sweep, std::span<const MultiIndex> betas,
                                           const VerificationOptions& options) {
  symbol.validate();
  VerificationReport report;
  report.kind = "multipliers";
  report.thresholds = options.thresholds;
  report.notes.push_back("R-bounds are lower estimates found by maximization");
  report.notes.push_back("flatness is max/min over t at fixed lambda for the sigma_alpha suprema");
  if (sweep.empty()) {
    report.finalize();
    return report;
  }
  const std::size_t n = sweep.t_grid().front().size();
  for (const auto& beta : betas) {
    if (beta.size() != n) raise(ErrorKind::InvalidArgument, "beta dimension must equal n");
    for (std::size_t k = 0; k < n; ++k) {
      if (beta[k] != 0.0 && beta[k] != 1.0) raise(ErrorKind::InvalidArgument, "beta entries must be 0 or 1");
    }
  }
  const auto index_set = resolve_index_set(options, n, symbol.m);
  const auto samples = multiplier_samples(n);
  const double q = model.q();
  const double m = symbol.m;
  const Matrix& A = model.matrix();
  const ShiftedSolver solver(model);

  report.points.resize(sweep.size());
  std::vector<double> sigma_sups(sweep.size(), 0.0), beta_sups(sweep.size(), 0.0);
  parallel_for(sweep.size(), options.threads, [&](std::size_t i) {
    const SweepPoint pt = sweep.point(i);
    PointRecord r = make_record(pt);
    try {
      const cplx lambda = pt.lambda();
      auto sigma_at = [&](const std::vector<double>& xi) {
        return Matrix(A * solver.inverse(lambda + eval_symbol(symbol, pt.t, xi)));
      };
      std::vector<Matrix> sigma_family;
      std::vector<std::vector<Matrix>> alpha_families(index_set.size());
      std::vector<std::vector<Matrix>> beta_families;
      double sigma_sup = 0.0;
      std::vector<double> alpha_sups(index_set.size(), 0.0);
      for (std::size_t s_index = 0; s_index < samples.size(); ++s_index) {
        const auto& xi = samples[s_index];
        const Matrix B = solver.inverse(lambda + eval_symbol(symbol, pt.t, xi));
        const Matrix sigma = A * B;
        double nb = 0.0, nsigma = 0.0;
        if (normal_l2(model)) {
          std::tie(nb, nsigma) = normal_mode_norms(model, lambda + eval_symbol(symbol, pt.t, xi));
        } else {
          nb = operator_norm(B, q).upper;
          nsigma = operator_norm(sigma, q).upper;
        }
        sigma_sup = std::max(sigma_sup, nsigma);
        if (s_index % kRboundStride == 0) sigma_family.push_back(sigma);
        for (std::size_t a = 0; a < index_set.size(); ++a) {
          const double c = pt.t.weight(index_set[a], m) * std::pow(std::abs(lambda), 1.0 - index_set[a].order() / m) *
                           abs_xi_power(xi, index_set[a]);
          alpha_sups[a] = std::max(alpha_sups[a], c * nb);
          if (s_index % kRboundStride == 0) alpha_families[a].push_back(c * B);
        }
      }
      std::vector<double> beta_values;
      for (const auto& beta : betas) {
        if (beta.is_zero()) continue;
        std::vector<Matrix> family;
        double sup = 0.0;
        for (std::size_t s_index = 0; s_index < samples.size(); ++s_index) {
          const auto& xi = samples[s_index];
          std::vector<std::size_t> axes;
          for (std::size_t k = 0; k < n; ++k) {
            if (beta[k] != 0.0) axes.push_back(k);
          }
          Matrix diff = Matrix::Zero(A.rows(), A.cols());
          for (std::size_t mask = 0; mask < (std::size_t{1} << axes.size()); ++mask) {
            std::vector<double> shifted = xi;
            double coeff = 1.0;
            for (std::size_t a = 0; a < axes.size(); ++a) {
              const std::size_t k = axes[a];
              const double h = 1e-4 * (1.0 + std::abs(xi[k]));
              const double sign = (mask >> a) & 1 ? -1.0 : 1.0;
              shifted[k] += sign * h;
              coeff *= sign / (2.0 * h);
            }
            diff += coeff * sigma_at(shifted);
          }
          double norm2 = 0.0;
          for (double v : xi) norm2 += v * v;
          const Matrix member = std::pow(std::sqrt(norm2), beta.order()) * diff;
          sup = std::max(sup, operator_norm(member, q).upper);
          if (s_index % kRboundStride == 0) family.push_back(member);
        }
        beta_values.push_back(sup);
        beta_families.push_back(std::move(family));
      }

      const std::uint64_t family_seed = options.seed ^ (0x9e3779b97f4a7c15ULL * (i + 1));
      json rb;
      rb["sigma"] = estimate_rbound(sigma_family, q, options.tuple_size, options.restarts, family_seed).value;
      std::vector<double> rb_alpha, rb_beta;
      for (const auto& fam : alpha_families) {
        rb_alpha.push_back(estimate_rbound(fam, q, options.tuple_size, options.restarts, family_seed).value);
      }
      for (const auto& fam : beta_families) {
        rb_beta.push_back(estimate_rbound(fam, q, options.tuple_size, options.restarts, family_seed).value);
      }
      rb["sigma_alpha"] = rb_alpha;
      rb["beta"] = rb_beta;

      double beta_sup = 0.0;
      for (double v : beta_values) beta_sup = std::max(beta_sup, v);
      r.ratio = *std::max_element(alpha_sups.begin(), alpha_sups.end());
      bool finite = std::isfinite(sigma_sup) && std::isfinite(beta_sup) && std::isfinite(r.ratio);
      if (!finite) {
        r.ok = false;
        r.failure = "non-finite multiplier norm";
      }
      json detail;
      detail["sigma"] = number(sigma_sup);
      detail["sigma_alpha"] = alpha_sups;
      detail["beta"] = beta_values;
      detail["rbound"] = std::move(rb);
      r.detail = std::move(detail);
      sigma_sups[i] = sigma_sup;
      beta_sups[i] = beta_sup;
    } catch (const Error& e) {
      r.ok = false;
      r.failure = std::string(to_string(e.kind())) + ": " + e.what();
    }
    report.points[i] = std::move(r);
  });
  report.finalize();

  // Flatness in t at each fixed lambda.
  const std::size_t nt = sweep.t_grid().size();
  double flat = 1.0;
  for (std::size_t g = 0; g * nt < report.points.size(); ++g) {
    double lo = kInf, hi = 0.0;
    for (std::size_t j = 0; j < nt; ++j) {
      const auto& p = report.points[g * nt + j];
      if (!p.ok) continue;
      lo = std::min(lo, p.ratio);
      hi = std::max(hi, p.ratio);
    }
    if (hi > 0.0) flat = std::max(flat, lo > 0.0 ? hi / lo : kInf);
  }
  report.summary.flatness = flat;
  report.verdict = judge(report.summary, report.thresholds);
  report.extra = {{"sigma_sup", number(*std::max_element(sigma_sups.begin(), sigma_sups.end()))},
                  {"beta_sup", number(*std::max_element(beta_sups.begin(), beta_sups.end()))}};
  return report;
}

}  // namespace psdo
