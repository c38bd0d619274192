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
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "psdo/psdo.h"

namespace {

struct Options {
  std::string config;
  std::vector<std::string> sets;
  std::optional<unsigned long long> seed;
  int threads = 1;
  std::string out;
};

int report_error(psdo_status status) {
  std::fprintf(stderr, "error: %s\n", psdo_last_error());
  return psdo_status_exit_code(status);
}

std::string output_dir(const psdo_scenario* scenario, const Options& o) {
  if (!o.out.empty()) return o.out;
  const auto config = nlohmann::json::parse(psdo_scenario_config(scenario));
  return config["output"]["dir"].get<std::string>();
}

int run(const std::string& command, const Options& o) {
  psdo_scenario* scenario = nullptr;
  psdo_status status = psdo_scenario_load_file(o.config.c_str(), &scenario);
  if (status != PSDO_OK) return report_error(status);
  for (const auto& s : o.sets) {
    status = psdo_scenario_set(scenario, s.c_str());
    if (status != PSDO_OK) {
      psdo_scenario_free(scenario);
      return report_error(status);
    }
  }
  if (o.seed) psdo_scenario_set_seed(scenario, *o.seed);

  psdo_report* report = nullptr;
  status = psdo_run(scenario, command.c_str(), o.threads, &report);
  if (status != PSDO_OK) {
    psdo_scenario_free(scenario);
    return report_error(status);
  }
  const std::string dir = output_dir(scenario, o);
  psdo_scenario_free(scenario);
  status = psdo_report_write(report, dir.c_str());
  if (status != PSDO_OK) {
    psdo_report_free(report);
    return report_error(status);
  }
  std::printf("%s\n", psdo_report_summary(report));
  const int code = psdo_verdict_exit_code(psdo_report_verdict(report));
  psdo_report_free(report);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parameter-elliptic pseudo-differential solvers and estimate verification"};
  app.set_version_flag("--version", std::string(psdo_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  unsigned long long seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Override data.seed");
  app.add_option("--threads", o.threads, "Worker threads (results do not depend on it)")->check(CLI::Range(1, 1024));
  app.add_option("--out", o.out, "Output directory (default: output.dir)");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"solve-elliptic", "Solve the elliptic problem and report the coercive ratio"},
      {"solve-parabolic", "Solve the parabolic Cauchy problem and compare integrators"},
      {"verify-coercivity", "Sweep the coercive ratio over the sector"},
      {"verify-resolvent", "Sweep the resolvent term sequence over the sector"},
      {"estimate-rbound", "Estimate the R-bound of a resolvent or multiplier family"},
      {"check-kahane", "Check the contraction principle on random instances"},
      {"check-multipliers", "Check the multiplier families"},
      {"check-symbol", "Print the symbol derivative constants and sector verdict"},
      {"run-scenario", "Run the tasks declared by the scenario"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config, "Scenario file (JSON)")->required();
    sub->add_option("--set", o.sets, "Override a key: dotted.key=value (repeatable)")->take_all();
  }

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) o.seed = seed;
  return run(app.get_subcommands().front()->get_name(), o);
}
