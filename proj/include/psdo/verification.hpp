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
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "psdo/elliptic.hpp"
#include "psdo/sweep.hpp"

namespace psdo {

enum class Verdict { pass, fail, not_applicable };

const char* to_string(Verdict v) noexcept;

struct Thresholds {
  double max_ratio = kInf;
  double flatness = 1.5;
};

struct PointRecord {
  std::size_t index = 0;
  double ray = 0.0;
  double radius = 0.0;
  std::vector<double> t;
  double ratio = 0.0;
  double residual = 0.0;
  bool ok = true;
  std::string failure;
  nlohmann::json detail;  ///< family-specific values, may be null
};

struct ReportSummary {
  std::size_t points = 0;
  std::size_t failures = 0;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  double flatness = 1.0;
  std::size_t worst_index = 0;
};

struct VerificationReport {
  std::string kind;
  std::vector<PointRecord> points;
  Thresholds thresholds;
  ReportSummary summary;
  Verdict verdict = Verdict::not_applicable;
  std::vector<std::string> notes;
  nlohmann::json extra;

  /// Fills summary (flatness = max / median) and the threshold verdict.
  void finalize();
};

nlohmann::json to_json(const VerificationReport& report);
/// Columns: ray, radius, t, ratio, residual, verdict.
std::string to_csv(const VerificationReport& report);

struct VerificationOptions {
  std::uint64_t seed = 20260101ULL;
  int threads = 1;
  Thresholds thresholds;
  std::vector<MultiIndex> index_set;  ///< empty means default_index_set
  int band_limited = 5;               ///< random band-limited data fields per point
  std::size_t tuple_size = 4;         ///< Rademacher tuple size for family R-bounds
  std::size_t restarts = 1;
};

/// Per-point generator seeded from (global seed, point index).
std::mt19937_64 point_rng(std::uint64_t seed, std::size_t index);

/// [sum t(alpha) |lambda|^{1 - |alpha|/m} ||D^alpha u|| + ||A u||] / ||f||.
double coercive_ratio(const EllipticProblem& prob, const SampledField& u, const SampledField& f,
                      std::span<const MultiIndex> index_set);

struct WorstMode {
  std::vector<int> wavenumbers;
  Vector direction;
  double ratio = 0.0;
};

/// Lattice mode and direction maximizing the closed-form per-mode coercive ratio.
WorstMode find_worst_mode(const EllipticProblem& prob, std::span<const MultiIndex> index_set, std::mt19937_64& rng);

/// Two Gaussian bumps (widths L/16, L/32), `band_limited` random fields on
/// |k| <= ceil(M/8), and the worst lattice mode.
std::vector<SampledField> generate_data(const EllipticProblem& prob, std::span<const MultiIndex> index_set,
                                        int band_limited, std::mt19937_64& rng);

VerificationReport coercivity_sweep(const EllipticProblem& base, const SectorSweep& sweep,
                                    const VerificationOptions& options = {});

/// Weighted resolvent terms sum t(alpha) |lambda|^{1 - |alpha|/m} ||D^alpha R|| + ||A R||
/// with R = (O_t + lambda)^-1, each norm maximized over lattice modes and probe fields.
VerificationReport resolvent_sweep(const EllipticProblem& base, const SectorSweep& sweep,
                                   const VerificationOptions& options = {});

enum class RademacherMode { enumerate, montecarlo };

/// (mean ||sum eps_j T_j u_j||_q, mean ||sum eps_j u_j||_q) over sign patterns.
std::pair<double, double> rademacher_average(std::span<const Matrix> operators, std::span<const Vector> vectors,
                                             double q, RademacherMode mode = RademacherMode::enumerate,
                                             std::size_t trials = 4096, std::uint64_t seed = 0x5eedULL);

struct RboundEstimate {
  double value = 0.0;
  std::vector<std::size_t> tuple;  ///< family positions of the maximizing tuple
  std::vector<Vector> vectors;
  std::size_t evaluations = 0;
};

/// Lower estimate of R(family): singleton norms plus coordinate ascent over
/// vectors for tuples drawn from starts keyed by (restart, position).
RboundEstimate estimate_rbound(std::span<const Matrix> family, double q, std::size_t tuple_size,
                               std::size_t restarts, std::uint64_t seed = 0x5eedULL);

struct KahaneResult {
  double constant = 0.0;  ///< mean ||sum eps a_j u_j|| / (s mean ||sum eps u_j||)
  double bound = 1.0;     ///< 1 for real scalars, 2 for complex
  bool real = true;
  bool pass = true;
};

KahaneResult kahane_contraction_check(std::span<const cplx> scalars, std::span<const Vector> vectors, double q);

/// Norms of sigma = A B, sigma_alpha = t(alpha) |lambda|^{1-|alpha|/m} |xi^alpha| B and
/// |xi|^{|beta|} Delta^beta sigma over frequency samples at every sweep point,
/// with lower R-bound estimates for each family.
VerificationReport multiplier_family_check(const SymbolSpec& symbol, const OperatorModel& model,
                                           const SectorSweep& sweep, std::span<const MultiIndex> betas,
                                           const VerificationOptions& options = {});

/// Frequency samples: diagonal sign directions times log-spaced radii in [1e-3, 1e8].
std::vector<std::vector<double>> multiplier_samples(std::size_t n, std::size_t per_decade = 8);

}  // namespace psdo
