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
#include "psdo/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "psdo/errors.hpp"
#include "psdo/operators.hpp"
#include "psdo/parabolic.hpp"

#ifndef PSDO_VERSION
#define PSDO_VERSION "0.0.0"
#endif

namespace psdo {

using nlohmann::json;

const char* version() noexcept { return PSDO_VERSION; }

// --- configuration schema -----------------------------------------------------------

const json& default_config() {
  static const json defaults = json::parse(R"({
  "name": "unnamed",
  "problem": "elliptic",
  "tasks": null,
  "grid": {"n": 1, "M": 256, "L": 16.0},
  "symbol": {"kind": "power", "m": 2.0, "theta0": 0.0, "epsilon": 0.0, "gamma": 1.0, "phi1": null, "table": null},
  "operator": {
    "kind": "explicit",
    "q": 2.0,
    "phi": "2pi/3",
    "matrix": [[1.0]],
    "generator": null,
    "bvp": {"points": 64, "length": "pi", "b2": 1.0, "b1": 0.0, "b0": 0.0}
  },
  "solve": {
    "lambda": 1.0,
    "t": null,
    "p": 2.0,
    "lower_terms": [],
    "forcing": {"kind": "gaussian", "sigma": null, "mode": null, "direction": null},
    "tol": 1e-9,
    "max_iter": 200
  },
  "sweep": {
    "phi2": "pi/4",
    "rays": 3,
    "radii": {"min": 1.0, "max": 1e6, "count": 13},
    "t": {"min": 1e-4, "max": 1.0, "count": 5, "grid": "isotropic"},
    "t_cap": 1.0
  },
  "data": {"seed": 20260101, "band_limited": 5, "index_set": null},
  "thresholds": {
    "coercivity": {"max_ratio": null, "flatness": 1.5},
    "resolvent": {"max_ratio": null, "flatness": 2.0},
    "multipliers": {"max_ratio": null, "flatness": 2.0},
    "positivity": {"max_ratio": null},
    "parabolic": {"flatness": 1.25, "refinement_min": 1.8, "refinement_max": 2.2, "semigroup": 1e-9}
  },
  "multipliers": {"betas": null, "tuple_size": 4, "restarts": 1},
  "rbound": {"family": "resolvent", "tuple_size": 4, "restarts": 2, "max": null},
  "kahane": {"draws": 1000, "members": 8, "dimension": 2, "complex": false},
  "parabolic": {
    "horizon": 1.0,
    "steps": 200,
    "profile": "sine",
    "p1": 2.0,
    "t_values": [1e-3, 1e-2, 1e-1, 1.0],
    "refine": [25, 50, 100, 200]
  },
  "output": {"dir": "out", "fields": false}
})");
  return defaults;
}

namespace {

std::string join_path(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void merge_strict(json& base, const json& user, const std::string& path) {
  for (const auto& [key, value] : user.items()) {
    const std::string p = join_path(path, key);
    if (!base.contains(key)) raise(ErrorKind::Validation, "unknown config key '" + p + "'");
    json& slot = base[key];
    if (slot.is_object()) {
      if (!value.is_object()) raise(ErrorKind::Validation, "config key '" + p + "' must be a section");
      merge_strict(slot, value, p);
    } else if (slot.is_null() || value.is_null()) {
      slot = value;
    } else if (slot.is_number() || (slot.is_string() && (value.is_number() || value.is_string()))) {
      if (!value.is_number() && !value.is_string()) raise(ErrorKind::Validation, "config key '" + p + "' must be a number");
      slot = value;
    } else if (slot.is_string() && !value.is_string()) {
      raise(ErrorKind::Validation, "config key '" + p + "' must be a string");
    } else if (slot.is_boolean() && !value.is_boolean()) {
      raise(ErrorKind::Validation, "config key '" + p + "' must be true or false");
    } else if (slot.is_array() && !value.is_array()) {
      raise(ErrorKind::Validation, "config key '" + p + "' must be an array");
    } else {
      slot = value;
    }
  }
}

void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& path) {
  if (!j.is_object()) raise(ErrorKind::Validation, "config key '" + path + "' must be a section");
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
      raise(ErrorKind::Validation, "unknown config key '" + join_path(path, key) + "'");
    }
  }
}

// Numbers may be written as JSON numbers or as strings: "inf", "pi", "pi/4", "2pi/3", "3*pi/4", "-pi/2".
double to_number(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s == "inf" || s == "+inf" || s == "Infinity") return kInf;
    if (s == "-inf") return -kInf;
    const auto pos = s.find("pi");
    if (pos != std::string::npos) {
      std::string head = s.substr(0, pos);
      std::string tail = s.substr(pos + 2);
      if (!head.empty() && head.back() == '*') head.pop_back();
      double factor = 1.0;
      try {
        if (head == "-") {
          factor = -1.0;
        } else if (!head.empty()) {
          std::size_t used = 0;
          factor = std::stod(head, &used);
          if (used != head.size()) throw std::invalid_argument(head);
        }
        double divisor = 1.0;
        if (!tail.empty()) {
          if (tail.front() != '/') throw std::invalid_argument(tail);
          std::size_t used = 0;
          divisor = std::stod(tail.substr(1), &used);
          if (used != tail.size() - 1) throw std::invalid_argument(tail);
        }
        return factor * kPi / divisor;
      } catch (const std::exception&) {
      }
    }
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  raise(ErrorKind::Validation, "config key '" + path + "' must be a number");
}

int to_int(const json& j, const std::string& path) {
  const double v = to_number(j, path);
  if (!(v == std::floor(v)) || std::abs(v) > 1e9) raise(ErrorKind::Validation, "config key '" + path + "' must be an integer");
  return static_cast<int>(v);
}

std::string to_text(const json& j, const std::string& path) {
  if (!j.is_string()) raise(ErrorKind::Validation, "config key '" + path + "' must be a string");
  return j.get<std::string>();
}

cplx to_complex(const json& j, const std::string& path) {
  if (j.is_array()) {
    if (j.size() != 2) raise(ErrorKind::Validation, "config key '" + path + "' must be a number or [re, im]");
    return {to_number(j[0], path), to_number(j[1], path)};
  }
  return {to_number(j, path), 0.0};
}

std::vector<double> to_reals(const json& j, const std::string& path) {
  if (!j.is_array()) raise(ErrorKind::Validation, "config key '" + path + "' must be an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(to_number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Matrix to_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) raise(ErrorKind::Validation, "config key '" + path + "' must be a nonempty array of rows");
  const std::size_t n = j.size();
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) raise(ErrorKind::Validation, "config key '" + path + "' must be square");
    for (std::size_t c = 0; c < n; ++c) out(r, c) = to_complex(j[r][c], path);
  }
  return out;
}

std::function<double(double)> to_profile(const json& j, const std::string& path) {
  if (j.is_array()) {
    const auto coeffs = to_reals(j, path);
    return [coeffs](double y) {
      double v = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * y + *it;
      return v;
    };
  }
  const double c = to_number(j, path);
  return [c](double) { return c; };
}

MultiIndex to_multi_index(const json& j, std::size_t n, const std::string& path) {
  auto comp = to_reals(j, path);
  if (comp.size() != n) raise(ErrorKind::Validation, "config key '" + path + "' must have n entries");
  for (double v : comp) {
    if (!(v >= 0.0)) raise(ErrorKind::Validation, "config key '" + path + "' entries must be nonnegative");
  }
  return MultiIndex(std::move(comp));
}

// --- builders ------------------------------------------------------------------------

struct Context {
  json config;
  std::string name;
  std::string problem;
  GridSpec grid;
  SymbolSpec symbol;
  OperatorModel model;
  double phi = 0.0;
  EllipticProblem elliptic;
  SectorSweep sweep;
  std::uint64_t seed = 0;
  int band_limited = 5;
  std::vector<MultiIndex> index_set;
  bool fields = false;
};

GridSpec build_grid(const json& g) {
  return GridSpec(to_int(g["n"], "grid.n"), to_int(g["M"], "grid.M"), to_number(g["L"], "grid.L"));
}

SymbolSpec build_symbol(const json& s) {
  SymbolSpec spec;
  spec.kind = symbol_kind_from_string(to_text(s["kind"], "symbol.kind"));
  spec.m = to_number(s["m"], "symbol.m");
  spec.theta0 = to_number(s["theta0"], "symbol.theta0");
  spec.epsilon = to_number(s["epsilon"], "symbol.epsilon");
  spec.gamma = to_number(s["gamma"], "symbol.gamma");
  if (!s["phi1"].is_null()) spec.phi1 = to_number(s["phi1"], "symbol.phi1");
  if (!s["table"].is_null()) {
    const json& t = s["table"];
    require_keys(t, {"nodes", "values"}, "symbol.table");
    if (!t.contains("nodes") || !t.contains("values")) raise(ErrorKind::Validation, "symbol.table needs nodes and values");
    spec.table.nodes = to_reals(t["nodes"], "symbol.table.nodes");
    if (!t["values"].is_array()) raise(ErrorKind::Validation, "symbol.table.values must be an array");
    for (const auto& v : t["values"]) spec.table.values.push_back(to_complex(v, "symbol.table.values"));
  }
  spec.validate();
  return spec;
}

Matrix build_generated(const json& g) {
  require_keys(g, {"type", "N", "lower", "diagonal", "upper", "values"}, "operator.generator");
  const std::string type = to_text(g.value("type", json()), "operator.generator.type");
  if (type == "tridiagonal") {
    for (const char* k : {"N", "lower", "diagonal", "upper"}) {
      if (!g.contains(k)) raise(ErrorKind::Validation, std::string("operator.generator needs key '") + k + "'");
    }
    return tridiagonal(to_int(g["N"], "operator.generator.N"), to_number(g["lower"], "operator.generator.lower"),
                       to_number(g["diagonal"], "operator.generator.diagonal"),
                       to_number(g["upper"], "operator.generator.upper"))
        .cast<cplx>();
  }
  if (type == "diagonal") {
    if (!g.contains("values")) raise(ErrorKind::Validation, "operator.generator needs key 'values'");
    const auto values = to_reals(g["values"], "operator.generator.values");
    if (values.empty()) raise(ErrorKind::Validation, "operator.generator.values must be nonempty");
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
    return out;
  }
  raise(ErrorKind::Validation, "operator.generator.type must be tridiagonal or diagonal");
}

OperatorModel build_operator(const json& o) {
  const std::string kind = to_text(o["kind"], "operator.kind");
  const double q = to_number(o["q"], "operator.q");
  if (!(q >= 1.0)) raise(ErrorKind::Validation, "operator.q must lie in [1, inf]");
  if (kind == "bvp") {
    const json& b = o["bvp"];
    BvpSpec spec;
    spec.points = to_int(b["points"], "operator.bvp.points");
    spec.length = to_number(b["length"], "operator.bvp.length");
    spec.b2 = to_profile(b["b2"], "operator.bvp.b2");
    spec.b1 = to_profile(b["b1"], "operator.bvp.b1");
    spec.b0 = to_profile(b["b0"], "operator.bvp.b0");
    spec.q = q;
    return build_bvp_operator(spec);
  }
  const Matrix A = o["generator"].is_null() ? to_matrix(o["matrix"], "operator.matrix") : build_generated(o["generator"]);
  if (kind == "explicit") return OperatorModel::from_matrix(A, q);
  if (kind == "system") {
    if (A.imag().cwiseAbs().maxCoeff() != 0.0) raise(ErrorKind::Validation, "system coefficients must be real");
    return build_system(A.real(), q);
  }
  raise(ErrorKind::Validation, "operator.kind must be explicit, system or bvp");
}

ScaleParams build_t(const json& s, std::size_t n, double cap) {
  if (s.is_null()) return ScaleParams::isotropic(n, 1.0, cap);
  if (!s.is_array()) return ScaleParams::isotropic(n, to_number(s, "solve.t"), cap);
  auto t = to_reals(s, "solve.t");
  if (t.size() != n) raise(ErrorKind::Validation, "solve.t must have n entries");
  return ScaleParams(std::move(t), cap);
}

std::vector<LowerTerm> build_lower_terms(const json& arr, const GridSpec& grid, int N) {
  std::vector<LowerTerm> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "solve.lower_terms[" + std::to_string(i) + "]";
    const json& e = arr[i];
    require_keys(e, {"alpha", "coefficient", "modulation"}, path);
    if (!e.contains("alpha") || !e.contains("coefficient")) raise(ErrorKind::Validation, path + " needs alpha and coefficient");
    MultiIndex alpha = to_multi_index(e["alpha"], static_cast<std::size_t>(grid.n), path + ".alpha");
    Matrix c = e["coefficient"].is_array() ? to_matrix(e["coefficient"], path + ".coefficient")
                                           : Matrix(Matrix::Identity(N, N) * to_complex(e["coefficient"], path + ".coefficient"));
    if (c.rows() != N) raise(ErrorKind::Validation, path + ".coefficient must be N x N");
    if (!e.contains("modulation") || e["modulation"].is_null()) {
      out.push_back(LowerTerm::constant(std::move(alpha), std::move(c)));
      continue;
    }
    const json& mod = e["modulation"];
    require_keys(mod, {"amplitude", "wavenumber"}, path + ".modulation");
    const double amp = to_number(mod.value("amplitude", json(0.5)), path + ".modulation.amplitude");
    const int k = to_int(mod.value("wavenumber", json(1)), path + ".modulation.wavenumber");
    std::vector<Matrix> field;
    for (std::size_t x = 0; x < grid.points(); ++x) {
      const double x1 = grid.coordinate_of(x)[0];
      field.push_back((1.0 + amp * std::cos(2.0 * kPi * k * x1 / grid.L)) * c);
    }
    out.push_back(LowerTerm::field(std::move(alpha), std::move(field)));
  }
  return out;
}

Thresholds build_thresholds(const json& t, const std::string& path) {
  Thresholds th;
  th.max_ratio = t["max_ratio"].is_null() ? kInf : to_number(t["max_ratio"], path + ".max_ratio");
  th.flatness = t.contains("flatness") ? to_number(t["flatness"], path + ".flatness") : kInf;
  return th;
}

Context build_context(const json& cfg) {
  Context ctx;
  ctx.config = cfg;
  ctx.name = to_text(cfg["name"], "name");
  ctx.problem = to_text(cfg["problem"], "problem");
  static const std::vector<std::string> problems = {"elliptic", "elliptic-full", "parabolic", "system", "bvp"};
  if (std::find(problems.begin(), problems.end(), ctx.problem) == problems.end()) {
    raise(ErrorKind::Validation, "problem must be one of elliptic, elliptic-full, parabolic, system, bvp");
  }
  ctx.grid = build_grid(cfg["grid"]);
  ctx.symbol = build_symbol(cfg["symbol"]);
  ctx.model = build_operator(cfg["operator"]);
  const std::string op_kind = cfg["operator"]["kind"].get<std::string>();
  if (ctx.problem == "system" && op_kind != "system") raise(ErrorKind::Validation, "problem system needs operator.kind = system");
  if (ctx.problem == "bvp" && op_kind != "bvp") raise(ErrorKind::Validation, "problem bvp needs operator.kind = bvp");
  ctx.phi = to_number(cfg["operator"]["phi"], "operator.phi");
  if (!(ctx.phi >= 0.0 && ctx.phi < kPi)) raise(ErrorKind::Validation, "operator.phi must lie in [0, pi)");

  const json& s = cfg["solve"];
  const auto n = static_cast<std::size_t>(ctx.grid.n);
  const double cap = to_number(cfg["sweep"]["t_cap"], "sweep.t_cap");
  EllipticProblem& e = ctx.elliptic;
  e.model = ctx.model;
  e.symbol = ctx.symbol;
  e.grid = ctx.grid;
  e.t = build_t(s["t"], n, cap);
  e.lambda = ctx.problem == "parabolic" ? cplx(0.0, 0.0) : to_complex(s["lambda"], "solve.lambda");
  e.p = to_number(s["p"], "solve.p");
  e.lower_terms = build_lower_terms(s["lower_terms"], ctx.grid, ctx.model.dimension());
  if (!e.lower_terms.empty() && ctx.problem != "elliptic-full") {
    raise(ErrorKind::Validation, "solve.lower_terms require problem elliptic-full");
  }
  e.validate();

  const json& w = cfg["sweep"];
  const int rays = to_int(w["rays"], "sweep.rays");
  const int rcount = to_int(w["radii"]["count"], "sweep.radii.count");
  const int tcount = to_int(w["t"]["count"], "sweep.t.count");
  if (rays < 0 || rcount < 0 || tcount < 0) raise(ErrorKind::Validation, "sweep counts must be nonnegative");
  ctx.sweep = SectorSweep::standard(to_number(w["phi2"], "sweep.phi2"), static_cast<std::size_t>(rays),
                                    to_number(w["radii"]["min"], "sweep.radii.min"),
                                    to_number(w["radii"]["max"], "sweep.radii.max"), static_cast<std::size_t>(rcount), n,
                                    to_number(w["t"]["min"], "sweep.t.min"), to_number(w["t"]["max"], "sweep.t.max"),
                                    static_cast<std::size_t>(tcount), cap);
  const std::string t_grid = to_text(w["t"]["grid"], "sweep.t.grid");
  if (t_grid == "product" && n > 1) {
    // Every combination of per-axis values.
    const auto values = log_space(to_number(w["t"]["min"], "sweep.t.min"), to_number(w["t"]["max"], "sweep.t.max"),
                                  static_cast<std::size_t>(tcount));
    std::vector<ScaleParams> ts;
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= values.size();
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<double> t(n);
      std::size_t c = code;
      for (std::size_t k = 0; k < n; ++k, c /= values.size()) t[k] = values[c % values.size()];
      ts.emplace_back(std::move(t), cap);
    }
    ctx.sweep = SectorSweep(ctx.sweep.phi2(), ctx.sweep.rays(), ctx.sweep.radii(), std::move(ts));
  } else if (t_grid != "isotropic" && t_grid != "product") {
    raise(ErrorKind::Validation, "sweep.t.grid must be isotropic or product");
  }

  const json& d = cfg["data"];
  const double seed = to_number(d["seed"], "data.seed");
  if (!(seed >= 0.0) || seed != std::floor(seed) || seed > 1.8e19) raise(ErrorKind::Validation, "data.seed must be a nonnegative integer");
  ctx.seed = d["seed"].is_number_unsigned() ? d["seed"].get<std::uint64_t>() : static_cast<std::uint64_t>(seed);
  ctx.band_limited = to_int(d["band_limited"], "data.band_limited");
  if (ctx.band_limited < 0) raise(ErrorKind::Validation, "data.band_limited must be nonnegative");
  if (!d["index_set"].is_null()) {
    if (!d["index_set"].is_array()) raise(ErrorKind::Validation, "data.index_set must be an array of multi-indices");
    for (std::size_t i = 0; i < d["index_set"].size(); ++i) {
      ctx.index_set.push_back(to_multi_index(d["index_set"][i], n, "data.index_set[" + std::to_string(i) + "]"));
    }
  }
  ctx.fields = cfg["output"]["fields"].get<bool>();
  return ctx;
}

VerificationOptions options_for(const Context& ctx, const RunOptions& run, const std::string& thresholds_key) {
  VerificationOptions o;
  o.seed = ctx.seed;
  o.threads = run.threads;
  o.index_set = ctx.index_set;
  o.band_limited = ctx.band_limited;
  o.thresholds = build_thresholds(ctx.config["thresholds"][thresholds_key], "thresholds." + thresholds_key);
  return o;
}

void check_sector_hypotheses(const Context& ctx) {
  certify_angles(ctx.model, ctx.symbol.sector_angle(), ctx.sweep.phi2(), ctx.phi);
}

// --- tasks -----------------------------------------------------------------------------

SampledField build_forcing(const Context& ctx) {
  const json& f = ctx.config["solve"]["forcing"];
  const std::string kind = to_text(f["kind"], "solve.forcing.kind");
  const int N = ctx.model.dimension();
  const double q = ctx.model.q();
  Vector direction = Vector::Ones(N);
  if (!f["direction"].is_null()) {
    if (!f["direction"].is_array() || f["direction"].size() != static_cast<std::size_t>(N)) {
      raise(ErrorKind::Validation, "solve.forcing.direction must have N entries");
    }
    for (int c = 0; c < N; ++c) direction(c) = to_complex(f["direction"][static_cast<std::size_t>(c)], "solve.forcing.direction");
  }
  if (kind == "gaussian") {
    const double sigma = f["sigma"].is_null() ? ctx.grid.L / 16.0 : to_number(f["sigma"], "solve.forcing.sigma");
    if (!(sigma > 0.0)) raise(ErrorKind::Validation, "solve.forcing.sigma must be positive");
    return gaussian_field(ctx.grid, direction, sigma, q);
  }
  if (kind == "mode") {
    std::vector<int> k(static_cast<std::size_t>(ctx.grid.n), 1);
    if (!f["mode"].is_null()) {
      const auto v = to_reals(f["mode"], "solve.forcing.mode");
      if (v.size() != k.size()) raise(ErrorKind::Validation, "solve.forcing.mode must have n entries");
      for (std::size_t i = 0; i < v.size(); ++i) k[i] = static_cast<int>(v[i]);
    }
    return mode_field(ctx.grid, k, direction, q);
  }
  if (kind == "band-limited") {
    std::mt19937_64 rng = point_rng(ctx.seed, 0);
    return random_band_limited(ctx.grid, N, (ctx.grid.M + 7) / 8, rng, q);
  }
  raise(ErrorKind::Validation, "solve.forcing.kind must be gaussian, mode or band-limited");
}

std::string columns(const SampledField& u) {
  std::ostringstream os;
  write_columns(os, u);
  return os.str();
}

std::string columns(const SpaceTimeField& u) {
  std::ostringstream os;
  write_columns(os, u);
  return os.str();
}

PointRecord lambda_record(std::size_t index, cplx lambda, const ScaleParams& t) {
  PointRecord r;
  r.index = index;
  r.ray = std::arg(lambda);
  r.radius = std::abs(lambda);
  r.t.assign(t.values().begin(), t.values().end());
  return r;
}

struct TaskOutput {
  VerificationReport report;
  std::vector<std::pair<std::string, std::string>> files;
};

TaskOutput task_solve(const Context& ctx) {
  TaskOutput out;
  VerificationReport& rep = out.report;
  rep.kind = "solve-elliptic";
  const EllipticProblem& prob = ctx.elliptic;
  const SampledField f = build_forcing(ctx);
  const double tol = to_number(ctx.config["solve"]["tol"], "solve.tol");
  const int max_iter = to_int(ctx.config["solve"]["max_iter"], "solve.max_iter");
  const FullSolveReport full = solve_full(prob, f, tol, max_iter);
  const auto index_set = ctx.index_set.empty() ? default_index_set(static_cast<std::size_t>(ctx.grid.n), ctx.symbol.m)
                                               : ctx.index_set;
  PointRecord r = lambda_record(0, prob.lambda, prob.t);
  r.ratio = lp_lq_norm(f, prob.p) > 0.0 ? coercive_ratio(prob, full.u, f, index_set) : 0.0;
  r.residual = full.residual;
  rep.points.push_back(r);
  const GraphNormReport g = graph_norm(prob, full.u);
  rep.extra = {{"iterations", full.iterations},
               {"contraction", full.contraction},
               {"history", full.history},
               {"graph_norm", {{"graph", g.graph}, {"sobolev", g.sobolev}, {"ratio", g.ratio}}},
               {"solution_norm", lp_lq_norm(full.u, prob.p)},
               {"forcing_norm", lp_lq_norm(f, prob.p)}};
  rep.thresholds = Thresholds{kInf, kInf};
  rep.finalize();
  const double bound = prob.lower_terms.empty() ? std::max(tol, 1e-10) : tol;
  if (rep.verdict == Verdict::pass && !(full.residual < bound)) {
    rep.verdict = Verdict::fail;
    rep.notes.push_back("relative residual above tolerance");
  }
  if (ctx.fields) out.files.emplace_back("solution.dat", columns(full.u));
  return out;
}

double forcing_profile(const std::string& name, double y, double Y) {
  if (name == "sine") return std::sin(kPi * y / Y);
  if (name == "constant") return 1.0;
  if (name == "ramp") return y / Y;
  raise(ErrorKind::Validation, "parabolic.profile must be sine, constant or ramp");
}

TaskOutput task_parabolic(const Context& ctx) {
  const json& pc = ctx.config["parabolic"];
  const json& th = ctx.config["thresholds"]["parabolic"];
  const double Y = to_number(pc["horizon"], "parabolic.horizon");
  const int J = to_int(pc["steps"], "parabolic.steps");
  const std::string profile = to_text(pc["profile"], "parabolic.profile");
  forcing_profile(profile, 0.0, 1.0);
  const double p = ctx.elliptic.p;
  const double p1 = to_number(pc["p1"], "parabolic.p1");
  const auto t_values = to_reals(pc["t_values"], "parabolic.t_values");
  const auto refine = to_reals(pc["refine"], "parabolic.refine");
  const SampledField w = build_forcing(ctx);
  auto g = [&](double y) { return forcing_profile(profile, y, Y); };

  ParabolicProblem pp;
  pp.elliptic = ctx.elliptic;
  pp.elliptic.lambda = 0.0;
  pp.phi = ctx.phi;
  pp.forcing = separable_forcing(w, g, Y, J, p, p1);
  pp.validate();
  const PositivityCertificate cert = pp.certify();

  TaskOutput out;
  VerificationReport& rep = out.report;
  rep.kind = "parabolic";
  rep.thresholds = Thresholds{kInf, to_number(th["flatness"], "thresholds.parabolic.flatness")};
  const SpaceTimeField u = solve_duhamel(pp);
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    ParabolicProblem pt = pp;
    pt.elliptic.t = ScaleParams::isotropic(static_cast<std::size_t>(ctx.grid.n), t_values[i],
                                           to_number(ctx.config["sweep"]["t_cap"], "sweep.t_cap"));
    const SpaceTimeField ud = solve_duhamel(pt);
    const SpaceTimeField ue = solve_implicit_euler(pt);
    PointRecord r;
    r.index = i;
    r.t.assign(pt.elliptic.t.values().begin(), pt.elliptic.t.values().end());
    r.ratio = parabolic_coercive_ratio(pt, ud);
    for (std::size_t j = 0; j <= ud.steps(); ++j) r.residual = std::max(r.residual, lp_lq_norm(ud.slice(j) - ue.slice(j), p));
    rep.points.push_back(r);
  }
  rep.finalize();

  double lo = kInf, hi = 0.0;
  for (const auto& r : rep.points) {
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  if (!rep.points.empty()) rep.summary.flatness = lo > 0.0 ? hi / lo : kInf;

  std::vector<double> errors, ratios;
  for (double level : refine) {
    const int steps = static_cast<int>(level);
    if (steps < 1 || level != steps) raise(ErrorKind::Validation, "parabolic.refine entries must be positive integers");
    ParabolicProblem pr = pp;
    pr.forcing = separable_forcing(w, g, Y, steps, p, p1);
    const SpaceTimeField ud = solve_duhamel(pr);
    const SpaceTimeField ue = solve_implicit_euler(pr);
    double err = 0.0;
    for (std::size_t j = 0; j <= ud.steps(); ++j) err = std::max(err, lp_lq_norm(ud.slice(j) - ue.slice(j), p));
    errors.push_back(err);
    if (errors.size() > 1) ratios.push_back(errors[errors.size() - 2] / err);
  }
  const auto E1 = semigroup_propagator(pp, 0.3 * Y);
  const auto E2 = semigroup_propagator(pp, 0.5 * Y);
  const auto E3 = semigroup_propagator(pp, 0.8 * Y);
  double semigroup = 0.0;
  for (std::size_t k = 0; k < E1.size(); ++k) semigroup = std::max(semigroup, (E1[k] * E2[k] - E3[k]).cwiseAbs().maxCoeff());

  const double rmin = to_number(th["refinement_min"], "thresholds.parabolic.refinement_min");
  const double rmax = to_number(th["refinement_max"], "thresholds.parabolic.refinement_max");
  const double smax = to_number(th["semigroup"], "thresholds.parabolic.semigroup");
  bool ok = rep.verdict != Verdict::fail && rep.summary.flatness <= rep.thresholds.flatness;
  for (double r : ratios) ok = ok && r >= rmin && r <= rmax;
  ok = ok && semigroup < smax;
  rep.verdict = rep.points.empty() ? Verdict::not_applicable : (ok ? Verdict::pass : Verdict::fail);
  rep.notes.push_back("flatness is max/min of the coercive ratio over t");
  rep.extra = {{"refinement", {{"steps", refine}, {"errors", errors}, {"ratios", ratios}}},
               {"semigroup_error", semigroup},
               {"positivity_constant", cert.constant},
               {"angle", ctx.phi}};
  if (ctx.fields) out.files.emplace_back("solution.dat", columns(u));
  return out;
}

TaskOutput task_positivity(const Context& ctx, const RunOptions&) {
  TaskOutput out;
  VerificationReport& rep = out.report;
  rep.kind = "positivity";
  rep.thresholds = build_thresholds(ctx.config["thresholds"]["positivity"], "thresholds.positivity");
  const double angle = ctx.phi;
  const std::vector<double> rays = angle > 0.0 ? std::vector<double>{-angle, 0.0, angle} : std::vector<double>{0.0};
  std::vector<double> radii = {0.0};
  for (double r : log_space(1e-2, 1e6, 17)) radii.push_back(r);
  const SectorSweep sweep(angle, rays, radii, {ScaleParams::isotropic(1, 1.0)});
  const PositivityCertificate cert = check_positivity(ctx.model, angle, sweep);
  std::size_t index = 0;
  for (double ray : rays) {
    for (double radius : radii) {
      PointRecord r;
      r.index = index++;
      r.ray = ray;
      r.radius = radius;
      try {
        r.ratio = (1.0 + radius) * operator_norm(resolvent(ctx.model, std::polar(radius, ray)), ctx.model.q()).upper;
      } catch (const Error& e) {
        r.ok = false;
        r.failure = e.what();
      }
      rep.points.push_back(r);
    }
  }
  rep.finalize();
  if (!cert.ok) rep.verdict = Verdict::fail;
  rep.extra = {{"angle", angle},
               {"constant", cert.constant},
               {"worst_lambda", {cert.worst_lambda.real(), cert.worst_lambda.imag()}},
               {"min_eigenvalue", ctx.model.min_eigenvalue()},
               {"symmetric", ctx.model.symmetric()},
               {"positive_definite", ctx.model.positive_definite()},
               {"dimension", ctx.model.dimension()}};
  return out;
}

TaskOutput task_rbound(const Context& ctx) {
  const json& rc = ctx.config["rbound"];
  const std::string family_name = to_text(rc["family"], "rbound.family");
  const int tuple = to_int(rc["tuple_size"], "rbound.tuple_size");
  const int restarts = to_int(rc["restarts"], "rbound.restarts");
  if (tuple < 1 || restarts < 0) raise(ErrorKind::Validation, "rbound.tuple_size must be >= 1 and restarts >= 0");
  const double q = ctx.model.q();
  const int N = ctx.model.dimension();

  TaskOutput out;
  VerificationReport& rep = out.report;
  rep.kind = "rbound";
  rep.thresholds = Thresholds{rc["max"].is_null() ? kInf : to_number(rc["max"], "rbound.max"), kInf};
  std::vector<Matrix> family;
  if (family_name == "resolvent") {
    for (double ray : ctx.sweep.rays()) {
      for (double radius : ctx.sweep.radii()) {
        const cplx lambda = std::polar(radius, ray);
        family.push_back(lambda * resolvent(ctx.model, lambda));
        PointRecord r;
        r.index = rep.points.size();
        r.ray = ray;
        r.radius = radius;
        r.ratio = operator_norm(family.back(), q).upper;
        rep.points.push_back(r);
      }
    }
  } else if (family_name == "sigma") {
    const ShiftedSolver solver(ctx.model);
    for (const auto& xi : multiplier_samples(static_cast<std::size_t>(ctx.grid.n), 2)) {
      const cplx shift = ctx.elliptic.lambda + eval_symbol(ctx.symbol, ctx.elliptic.t, xi);
      family.push_back(ctx.model.matrix() * solver.inverse(shift));
      double norm2 = 0.0;
      for (double v : xi) norm2 += v * v;
      PointRecord r = lambda_record(rep.points.size(), ctx.elliptic.lambda, ctx.elliptic.t);
      r.residual = std::sqrt(norm2);
      r.ratio = operator_norm(family.back(), q).upper;
      rep.points.push_back(r);
    }
  } else {
    raise(ErrorKind::Validation, "rbound.family must be resolvent or sigma");
  }
  const RboundEstimate est = estimate_rbound(family, q, static_cast<std::size_t>(tuple),
                                             static_cast<std::size_t>(restarts), ctx.seed);
  rep.finalize();
  if (rep.verdict == Verdict::pass && !(est.value <= rep.thresholds.max_ratio)) rep.verdict = Verdict::fail;
  rep.summary.flatness = 1.0;
  rep.notes.push_back("the estimate is a lower bound found by maximization");
  json vectors = json::array();
  for (const auto& v : est.vectors) {
    json entries = json::array();
    for (Eigen::Index c = 0; c < v.size(); ++c) entries.push_back({v(c).real(), v(c).imag()});
    vectors.push_back(entries);
  }
  rep.extra = {{"family", family_name},
               {"members", family.size()},
               {"dimension", N},
               {"estimate", est.value},
               {"tuple", est.tuple},
               {"vectors", vectors},
               {"evaluations", est.evaluations}};
  return out;
}

TaskOutput task_kahane(const Context& ctx) {
  const json& kc = ctx.config["kahane"];
  const int draws = to_int(kc["draws"], "kahane.draws");
  const int members = to_int(kc["members"], "kahane.members");
  const int dim = to_int(kc["dimension"], "kahane.dimension");
  const bool complex_scalars = kc["complex"].get<bool>();
  if (draws < 0 || members < 1 || members > 12 || dim < 1) {
    raise(ErrorKind::Validation, "kahane needs draws >= 0, 1 <= members <= 12, dimension >= 1");
  }
  TaskOutput out;
  VerificationReport& rep = out.report;
  rep.kind = "kahane";
  const double bound = complex_scalars ? 2.0 : 1.0;
  rep.thresholds = Thresholds{bound + 1e-12, kInf};
  for (int d = 0; d < draws; ++d) {
    auto rng = point_rng(ctx.seed, static_cast<std::size_t>(d));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::normal_distribution<double> normal;
    std::vector<cplx> scalars;
    std::vector<Vector> vectors;
    for (int j = 0; j < members; ++j) {
      if (complex_scalars) {
        const double radius = std::sqrt(0.5 * (unit(rng) + 1.0));
        scalars.push_back(std::polar(radius, kPi * unit(rng)));
      } else {
        scalars.push_back(unit(rng));
      }
      Vector v(dim);
      for (int c = 0; c < dim; ++c) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(c) = cplx(re, im);
      }
      vectors.push_back(v);
    }
    const KahaneResult k = kahane_contraction_check(scalars, vectors, ctx.model.q());
    PointRecord r;
    r.index = static_cast<std::size_t>(d);
    r.ratio = k.constant;
    rep.points.push_back(r);
  }
  rep.finalize();
  rep.summary.flatness = 1.0;
  rep.extra = {{"bound", bound}, {"members", members}, {"dimension", dim}, {"complex", complex_scalars}};
  return out;
}

TaskOutput task_multipliers(const Context& ctx, const RunOptions& run) {
  const json& mc = ctx.config["multipliers"];
  VerificationOptions o = options_for(ctx, run, "multipliers");
  o.tuple_size = static_cast<std::size_t>(to_int(mc["tuple_size"], "multipliers.tuple_size"));
  o.restarts = static_cast<std::size_t>(to_int(mc["restarts"], "multipliers.restarts"));
  std::vector<MultiIndex> betas;
  const auto n = static_cast<std::size_t>(ctx.grid.n);
  if (mc["betas"].is_null()) {
    for (auto& b : binary_multi_indices(n)) {
      if (!b.is_zero()) betas.push_back(b);
    }
  } else {
    if (!mc["betas"].is_array()) raise(ErrorKind::Validation, "multipliers.betas must be an array");
    for (std::size_t i = 0; i < mc["betas"].size(); ++i) {
      betas.push_back(to_multi_index(mc["betas"][i], n, "multipliers.betas[" + std::to_string(i) + "]"));
    }
  }
  return {multiplier_family_check(ctx.symbol, ctx.model, ctx.sweep, betas, o), {}};
}

TaskOutput task_symbol(const Context& ctx) {
  const auto n = static_cast<std::size_t>(ctx.grid.n);
  std::vector<std::vector<double>> xi_grid;
  const auto radii = log_space(1e-2, 1e3, 21);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    for (double r : radii) {
      std::vector<double> xi(n);
      for (std::size_t k = 0; k < n; ++k) xi[k] = ((mask >> k) & 1 ? -1.0 : 1.0) * r * scale * (1.0 + 0.25 * k);
      xi_grid.push_back(std::move(xi));
    }
  }
  const auto betas = binary_multi_indices(n);
  const SymbolClassReport sc = check_symbol_class(ctx.symbol, ctx.sweep.t_grid(), xi_grid, betas);
  TaskOutput out;
  VerificationReport& rep = out.report;
  rep.kind = "symbol";
  rep.thresholds = Thresholds{kInf, kInf};
  json table = json::array();
  for (std::size_t i = 0; i < sc.bounds.size(); ++i) {
    PointRecord r;
    r.index = i;
    r.ratio = sc.bounds[i].constant;
    r.residual = static_cast<double>(sc.bounds[i].samples);
    r.detail = {{"beta", std::vector<double>(sc.bounds[i].beta.components().begin(), sc.bounds[i].beta.components().end())}};
    rep.points.push_back(r);
  }
  rep.finalize();
  rep.summary.flatness = 1.0;
  rep.verdict = sc.pass ? Verdict::pass : Verdict::fail;
  rep.extra = {{"in_sector", sc.in_sector},
               {"worst_argument", sc.worst_argument},
               {"lower_margin", sc.lower_margin},
               {"sector_angle", ctx.symbol.sector_angle()},
               {"kind", to_string(ctx.symbol.kind)}};
  return out;
}

std::vector<std::string> default_tasks(const std::string& problem) {
  if (problem == "elliptic") return {"coercivity", "resolvent"};
  if (problem == "elliptic-full") return {"solve", "coercivity"};
  if (problem == "parabolic") return {"parabolic"};
  if (problem == "system") return {"coercivity"};
  return {"positivity", "coercivity"};
}

bool needs_sector(const std::string& task) {
  return task == "coercivity" || task == "resolvent" || task == "multipliers";
}

TaskOutput run_task(const Context& ctx, const std::string& task, const RunOptions& run) {
  if (task == "solve") {
    if (ctx.problem == "parabolic") return task_parabolic(ctx);
    return task_solve(ctx);
  }
  if (task == "parabolic") return task_parabolic(ctx);
  if (task == "coercivity") return {coercivity_sweep(ctx.elliptic, ctx.sweep, options_for(ctx, run, "coercivity")), {}};
  if (task == "resolvent") {
    EllipticProblem base = ctx.elliptic;
    base.lower_terms.clear();
    return {resolvent_sweep(base, ctx.sweep, options_for(ctx, run, "resolvent")), {}};
  }
  if (task == "multipliers") return task_multipliers(ctx, run);
  if (task == "rbound") return task_rbound(ctx);
  if (task == "kahane") return task_kahane(ctx);
  if (task == "symbol") return task_symbol(ctx);
  if (task == "positivity") return task_positivity(ctx, run);
  raise(ErrorKind::Validation, "unknown task '" + task + "'");
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

}  // namespace

// --- public API -------------------------------------------------------------------------

Scenario parse_scenario(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) raise(ErrorKind::ConfigParse, "configuration is empty");
  json user;
  try {
    user = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    raise(ErrorKind::ConfigParse, std::string("configuration is not valid JSON: ") + e.what());
  }
  if (!user.is_object()) raise(ErrorKind::ConfigParse, "configuration must be a JSON object");
  Scenario s;
  s.config = default_config();
  merge_strict(s.config, user, "");
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::ConfigParse, "cannot read configuration file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_scenario(os.str());
}

void apply_override(Scenario& scenario, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) raise(ErrorKind::Validation, "override must look like key=value: '" + assignment + "'");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  json patch = value;
  std::vector<std::string> parts;
  std::stringstream ss(key);
  for (std::string part; std::getline(ss, part, '.');) {
    if (part.empty()) raise(ErrorKind::Validation, "override key has an empty component: '" + key + "'");
    parts.push_back(part);
  }
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) patch = json{{*it, patch}};
  merge_strict(scenario.config, patch, "");
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"solve-elliptic",   "solve-parabolic", "verify-coercivity",
                                                 "verify-resolvent", "estimate-rbound", "check-kahane",
                                                 "check-multipliers", "check-symbol",   "run-scenario"};
  return names;
}

RunResult run_command(const Scenario& scenario, const std::string& command, const RunOptions& options) {
  std::vector<std::string> tasks;
  Context ctx;
  try {
    if (command == "solve-elliptic") {
      tasks = {"solve"};
    } else if (command == "solve-parabolic") {
      tasks = {"parabolic"};
    } else if (command == "verify-coercivity") {
      tasks = {"coercivity"};
    } else if (command == "verify-resolvent") {
      tasks = {"resolvent"};
    } else if (command == "estimate-rbound") {
      tasks = {"rbound"};
    } else if (command == "check-kahane") {
      tasks = {"kahane"};
    } else if (command == "check-multipliers") {
      tasks = {"multipliers"};
    } else if (command == "check-symbol") {
      tasks = {"symbol"};
    } else if (command != "run-scenario") {
      raise(ErrorKind::Validation, "unknown command '" + command + "'");
    }
    ctx = build_context(scenario.config);
    if (command == "run-scenario") {
      const json& t = scenario.config["tasks"];
      if (t.is_null()) {
        tasks = default_tasks(ctx.problem);
      } else {
        if (!t.is_array() || t.empty()) raise(ErrorKind::Validation, "tasks must be a nonempty array of task names");
        for (const auto& e : t) tasks.push_back(to_text(e, "tasks"));
      }
    }
    static const std::vector<std::string> known = {"solve",  "parabolic", "coercivity", "resolvent", "multipliers",
                                                   "rbound", "kahane",    "symbol",     "positivity"};
    for (const auto& task : tasks) {
      if (std::find(known.begin(), known.end(), task) == known.end()) raise(ErrorKind::Validation, "unknown task '" + task + "'");
      if (task == "solve" && ctx.problem == "parabolic" && command == "solve-elliptic") {
        raise(ErrorKind::Validation, "solve-elliptic needs an elliptic problem; use solve-parabolic");
      }
      if (task == "parabolic" && ctx.problem != "parabolic") raise(ErrorKind::Validation, "solve-parabolic needs problem = parabolic");
      if (needs_sector(task)) check_sector_hypotheses(ctx);
      if (task == "parabolic" && !(ctx.phi > 0.5 * kPi)) {
        raise(ErrorKind::Validation, "parabolic hypothesis phi > pi/2 violated: operator.phi = " + fmt(ctx.phi));
      }
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigParse || e.kind() == ErrorKind::Validation) throw;
    raise(ErrorKind::Validation, e.what());
  }

  RunResult result;
  json checks = json::array();
  std::ostringstream line;
  line << ctx.name << ' ' << command << ':';
  Verdict overall = Verdict::not_applicable;
  bool any_fail = false;
  std::string detail;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    TaskOutput out = run_task(ctx, tasks[i], options);
    const VerificationReport& rep = out.report;
    json j = to_json(rep);
    if (i == 0) {
      result.report["summary"] = j["summary"];
      result.report["points"] = j["points"];
      result.csv = to_csv(rep);
      j.erase("points");
    }
    checks.push_back(std::move(j));
    if (rep.verdict == Verdict::fail) any_fail = true;
    if (rep.verdict == Verdict::pass && overall == Verdict::not_applicable) overall = Verdict::pass;
    detail += (detail.empty() ? "" : "; ") + rep.kind + " " + to_string(rep.verdict) + " max=" + fmt(rep.summary.max_ratio) +
              " flatness=" + fmt(rep.summary.flatness);
    if (rep.kind == "symbol") {
      std::ostringstream tab;
      for (const auto& p : rep.points) {
        tab << "\n  C_beta[";
        const auto& b = p.detail["beta"];
        for (std::size_t k = 0; k < b.size(); ++k) tab << (k ? "," : "") << b[k].get<double>();
        tab << "] = " << fmt(p.ratio);
      }
      tab << "\n  sector " << (rep.extra["in_sector"].get<bool>() ? "ok" : "violated")
          << " (max |arg P| = " << fmt(rep.extra["worst_argument"].get<double>()) << ", phi1 = "
          << fmt(rep.extra["sector_angle"].get<double>()) << "), lower margin = "
          << fmt(rep.extra["lower_margin"].get<double>());
      detail += tab.str();
    }
    for (auto& f : out.files) result.files.push_back(std::move(f));
  }
  result.verdict = any_fail ? Verdict::fail : overall;

  json report;
  report["version"] = version();
  report["name"] = ctx.name;
  report["command"] = command;
  report["verdict"] = to_string(result.verdict);
  report["config"] = scenario.config;
  report["summary"] = result.report["summary"];
  report["points"] = result.report["points"];
  report["checks"] = std::move(checks);
  result.report = std::move(report);
  line << ' ' << to_string(result.verdict) << " (" << detail << ")";
  result.summary = line.str();
  return result;
}

void write_outputs(const RunResult& result, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) raise(ErrorKind::InvalidArgument, "cannot create output directory '" + dir + "': " + ec.message());
  auto write = [&](const std::string& name, const std::string& contents) {
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
    if (!out) raise(ErrorKind::InvalidArgument, "cannot write '" + name + "' in '" + dir + "'");
    out << contents;
  };
  write("report.json", result.report.dump(2) + "\n");
  write("report.csv", result.csv);
  for (const auto& [name, contents] : result.files) write(name, contents);
}

}  // namespace psdo
