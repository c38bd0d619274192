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

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "psdo/verification.hpp"

namespace psdo {

const char* version() noexcept;

/// Fully resolved configuration: defaults merged with the user document.
struct Scenario {
  nlohmann::json config;
};

/// Every accepted key with its default value.
const nlohmann::json& default_config();

/// Parses a JSON scenario. Throws ConfigParse for empty or malformed text and
/// Validation for unknown keys or mistyped values.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

/// Applies one `dotted.key=value` override. The value is read as JSON when it
/// parses and as a string otherwise.
void apply_override(Scenario& scenario, const std::string& assignment);

struct RunOptions {
  int threads = 1;
};

struct RunResult {
  nlohmann::json report;
  std::string csv;
  std::vector<std::pair<std::string, std::string>> files;  ///< extra exports: name, contents
  Verdict verdict = Verdict::not_applicable;
  std::string summary;
};

/// Commands: solve-elliptic, solve-parabolic, verify-coercivity, verify-resolvent,
/// estimate-rbound, check-kahane, check-multipliers, check-symbol, run-scenario.
/// Configuration problems surface as Validation errors before any computation.
RunResult run_command(const Scenario& scenario, const std::string& command, const RunOptions& options = {});

const std::vector<std::string>& command_names();

/// Writes report.json, report.csv and the extra files into `dir`.
void write_outputs(const RunResult& result, const std::string& dir);

}  // namespace psdo
