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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "edkp/suites.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edkp: elliptic dDKP reduction toolkit and verification suites"};
  app.require_subcommand(1);

  auto* runcmd = app.add_subcommand(
      "run", "run verification suites against a scenario");
  std::string scenario_name = "default-n2";
  std::string config_file;
  std::string suites_arg;
  std::string out_dir;
  std::string format = "json";
  std::uint64_t seed = 1;
  double tau_im = 0.0;
  bool tau_set = false;
  std::vector<std::string> tol_args;
  runcmd->add_option("--scenario", scenario_name,
                     "named scenario: default-n2 | default-n3");
  runcmd->add_option("--config", config_file, "scenario JSON file");
  runcmd->add_option("--suites", suites_arg,
                     "comma-separated suites or 'all'");
  runcmd->add_option("--out", out_dir, "report output directory");
  runcmd->add_option("--format", format, "json | csv | both")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  runcmd->add_option("--seed", seed, "random-sample seed");
  runcmd->add_option("--tau", tau_im, "Im(tau) override for the identity suite")
      ->each([&](const std::string&) { tau_set = true; });
  runcmd->add_option("--tol", tol_args,
                     "tolerance override SUITE=VALUE (repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    edkp::RunConfig cfg;
    if (!config_file.empty()) {
      std::ifstream is(config_file);
      if (!is) throw edkp::IoError("cannot read config " + config_file);
      std::stringstream buf;
      buf << is.rdbuf();
      cfg.scenario = edkp::scenario_from_json(buf.str());
    } else if (scenario_name == "default-n2") {
      cfg.scenario = edkp::Scenario::default_n2();
    } else if (scenario_name == "default-n3") {
      cfg.scenario = edkp::Scenario::default_n3();
    } else {
      throw edkp::ConfigError("unknown scenario: " + scenario_name);
    }
    cfg.suites = split_csv(suites_arg);
    cfg.output_dir = out_dir;
    cfg.format = format;
    cfg.seed = seed;
    if (tau_set) cfg.tau_im = tau_im;
    for (const auto& t : tol_args) {
      const auto eq = t.find('=');
      if (eq == std::string::npos)
        throw edkp::ConfigError("--tol expects SUITE=VALUE");
      cfg.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    }

    edkp::RunResult res = edkp::run(cfg);
    for (const auto& [name, reports] : res.by_suite) {
      bool pass = true;
      double worst = 0.0;
      for (const auto& r : reports) {
        pass = pass && r.pass;
        worst = std::max(worst, r.max_residual);
      }
      std::cout << (pass ? "[PASS] " : "[FAIL] ") << name
                << "  max residual " << worst << "\n";
    }
    return res.all_pass ? 0 : 1;
  } catch (const edkp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
