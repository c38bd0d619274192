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
#include "psdo/psdo.h"

#include <exception>
#include <new>
#include <string>

#include "psdo/errors.hpp"
#include "psdo/operators.hpp"
#include "psdo/scenario.hpp"
#include "psdo/symbols.hpp"

struct psdo_scenario {
  psdo::Scenario scenario;
  mutable std::string config_text;
};

struct psdo_report {
  psdo::RunResult result;
  std::string json;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_kind;

psdo_status fail(psdo_status status, const std::string& kind, const std::string& message) {
  last_kind = kind;
  last_error = message;
  return status;
}

template <class F>
psdo_status guarded(F&& body) {
  last_error.clear();
  last_kind.clear();
  try {
    body();
    return PSDO_OK;
  } catch (const psdo::Error& e) {
    const psdo_status status = e.kind() == psdo::ErrorKind::ConfigParse  ? PSDO_ERR_CONFIG_PARSE
                               : e.kind() == psdo::ErrorKind::Validation ? PSDO_ERR_VALIDATION
                                                                         : PSDO_ERR_EXECUTION;
    return fail(status, psdo::to_string(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PSDO_ERR_EXECUTION, "OutOfMemory", "out of memory");
  } catch (const std::exception& e) {
    return fail(PSDO_ERR_EXECUTION, "Internal", e.what());
  }
}

psdo_status null_argument(const char* name) { return fail(PSDO_ERR_NULL, "Null", std::string(name) + " is null"); }

}  // namespace

extern "C" {

const char* psdo_version(void) { return psdo::version(); }
const char* psdo_last_error(void) { return last_error.c_str(); }
const char* psdo_last_error_kind(void) { return last_kind.c_str(); }

psdo_status psdo_scenario_load_file(const char* path, psdo_scenario** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new psdo_scenario{psdo::load_scenario(path), {}}; });
}

psdo_status psdo_scenario_load_string(const char* text, psdo_scenario** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new psdo_scenario{psdo::parse_scenario(text), {}}; });
}

void psdo_scenario_free(psdo_scenario* scenario) { delete scenario; }

psdo_status psdo_scenario_set(psdo_scenario* scenario, const char* assignment) {
  if (!scenario) return null_argument("scenario");
  if (!assignment) return null_argument("assignment");
  return guarded([&] {
    psdo::Scenario copy = scenario->scenario;
    psdo::apply_override(copy, assignment);
    scenario->scenario = std::move(copy);
  });
}

psdo_status psdo_scenario_set_seed(psdo_scenario* scenario, unsigned long long seed) {
  if (!scenario) return null_argument("scenario");
  return guarded([&] { scenario->scenario.config["data"]["seed"] = static_cast<std::uint64_t>(seed); });
}

const char* psdo_scenario_config(const psdo_scenario* scenario) {
  if (!scenario) return "";
  scenario->config_text = scenario->scenario.config.dump(2);
  return scenario->config_text.c_str();
}

psdo_status psdo_run(const psdo_scenario* scenario, const char* command, int threads, psdo_report** out) {
  if (!scenario) return null_argument("scenario");
  if (!command) return null_argument("command");
  if (!out) return null_argument("out");
  *out = nullptr;
  if (threads < 1) return fail(PSDO_ERR_INVALID_ARGUMENT, "InvalidArgument", "threads must be at least 1");
  return guarded([&] {
    psdo::RunOptions options;
    options.threads = threads;
    auto* report = new psdo_report{psdo::run_command(scenario->scenario, command, options), {}};
    report->json = report->result.report.dump(2) + "\n";
    *out = report;
  });
}

void psdo_report_free(psdo_report* report) { delete report; }

psdo_verdict psdo_report_verdict(const psdo_report* report) {
  if (!report) return PSDO_VERDICT_NOT_APPLICABLE;
  switch (report->result.verdict) {
    case psdo::Verdict::pass:
      return PSDO_VERDICT_PASS;
    case psdo::Verdict::fail:
      return PSDO_VERDICT_FAIL;
    default:
      return PSDO_VERDICT_NOT_APPLICABLE;
  }
}

const char* psdo_report_json(const psdo_report* report) { return report ? report->json.c_str() : ""; }
const char* psdo_report_csv(const psdo_report* report) { return report ? report->result.csv.c_str() : ""; }
const char* psdo_report_summary(const psdo_report* report) { return report ? report->result.summary.c_str() : ""; }

psdo_status psdo_report_write(const psdo_report* report, const char* dir) {
  if (!report) return null_argument("report");
  if (!dir) return null_argument("dir");
  return guarded([&] { psdo::write_outputs(report->result, dir); });
}

int psdo_status_exit_code(psdo_status status) {
  switch (status) {
    case PSDO_OK:
      return 0;
    case PSDO_ERR_CONFIG_PARSE:
    case PSDO_ERR_VALIDATION:
      return 2;
    default:
      return 1;
  }
}

int psdo_verdict_exit_code(psdo_verdict verdict) { return verdict == PSDO_VERDICT_FAIL ? 3 : 0; }

psdo_status psdo_i_xi_power(double xi, double alpha, double* re, double* im) {
  if (!re) return null_argument("re");
  if (!im) return null_argument("im");
  return guarded([&] {
    const double x[1] = {xi};
    const psdo::cplx v = psdo::i_xi_power(x, psdo::MultiIndex(std::vector<double>{alpha}));
    *re = v.real();
    *im = v.imag();
  });
}

psdo_status psdo_sector_sum_constant(double phi1, double phi2, size_t samples, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = psdo::sector_sum_constant(phi1, phi2, samples); });
}

psdo_status psdo_operator_norm(const double* entries, size_t n, double q, double* lower, double* upper) {
  if (!entries) return null_argument("entries");
  if (!lower) return null_argument("lower");
  if (!upper) return null_argument("upper");
  if (n == 0) return fail(PSDO_ERR_INVALID_ARGUMENT, "InvalidArgument", "matrix dimension must be positive");
  return guarded([&] {
    const auto dim = static_cast<Eigen::Index>(n);
    psdo::Matrix T(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) {
        const std::size_t k = 2 * static_cast<std::size_t>(r * dim + c);
        T(r, c) = psdo::cplx(entries[k], entries[k + 1]);
      }
    }
    const psdo::NormBracket b = psdo::operator_norm(T, q);
    *lower = b.lower;
    *upper = b.upper;
  });
}

}  // extern "C"
