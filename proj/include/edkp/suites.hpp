// Copyright (c) 2026 the edkp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EDKP_SUITES_HPP
#define EDKP_SUITES_HPP

#include <map>
#include <optional>
#include <string>

#include "edkp/gt.hpp"
#include "edkp/report.hpp"

namespace edkp {

struct RunConfig {
  Scenario scenario = Scenario::default_n2();
  std::vector<std::string> suites;  // empty is a ConfigError at run()
  std::map<std::string, double> tolerances;
  std::string output_dir;
  std::string format = "json";  // json | csv | both
  std::uint64_t seed = 1;
  std::optional<double> tau_im;  // override Im(tau) for the identity suite
};

/// All suite names in dependency order.
const std::vector<std::string>& known_suites();

/// Run one named suite and return its reports.
std::vector<ResidualReport> run_suite(const std::string& name,
                                      const RunConfig& cfg);

struct RunResult {
  std::map<std::string, std::vector<ResidualReport>> by_suite;
  bool all_pass = true;
};

/// Execute requested suites in dependency order; write one report file
/// per suite plus a summary when output_dir is set. Returns the results.
RunResult run(const RunConfig& cfg);

/// Parse a scenario from its JSON form.
Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& sc);

/// Field exports.
std::string field_to_json(const HydroField& field);
std::string field_to_csv(const HydroField& field);

}  // namespace edkp

#endif  // EDKP_SUITES_HPP
