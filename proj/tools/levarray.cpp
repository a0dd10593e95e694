// Copyright 2026 The levarray Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "levarray/levarray.h"
#include "runner/api.hpp"
#include "runner/config.hpp"
#include "runner/scenario.hpp"

namespace runner = levarray::runner;

namespace {

int run_command(const std::string& scenario, const std::optional<std::string>& config_path,
                const std::optional<std::string>& out_dir, const std::optional<int>& workers, bool oracle,
                const std::vector<std::string>& sets) {
  std::vector<std::string> overrides = sets;
  if (out_dir) overrides.push_back("output.dir=" + *out_dir);
  if (workers) overrides.push_back("workers=" + std::to_string(*workers));
  if (oracle) overrides.push_back("oracle=true");
  const auto config = runner::parse_config(scenario, config_path, overrides);
  const auto result = runner::run_scenario(config, std::cerr);
  for (const auto& file : result.files) std::cout << file << "\n";
  if (result.failed > 0) {
    std::cerr << "warning: " << result.failed << " of " << result.points << " points failed\n";
  }
  return 0;
}

int check_command(unsigned long long seed, std::size_t trials) {
  levarray_check* raw = nullptr;
  runner::check(levarray_check_run(seed, trials, &raw), "invariant suite");
  runner::CheckHandle suite(raw);
  int failures = 0;
  for (std::size_t i = 0; i < levarray_check_size(suite.get()); ++i) {
    const char* name = nullptr;
    const char* detail = nullptr;
    int passed = 0;
    runner::check(levarray_check_result(suite.get(), i, &name, &passed, &detail), "invariant result");
    std::printf("%s %-32s %s\n", passed ? "PASS" : "FAIL", name, detail);
    failures += passed ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state entanglement of levitated nanoparticle arrays"};
  app.set_version_flag("--version", std::string(levarray_version()));
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a scenario preset and write CSV files");
  std::string scenario;
  std::optional<std::string> config_path;
  std::optional<std::string> out_dir;
  std::optional<int> workers;
  bool oracle = false;
  std::vector<std::string> sets;
  run->add_option("scenario", scenario, "Scenario id (see list-scenarios)")->required();
  run->add_option("--config", config_path, "Configuration file (key = value)");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--oracle", oracle, "Verify each located maximum against the lattice oracle");
  run->add_option("--set", sets, "Override a configuration key (key=value)")->take_all();

  auto* list = app.add_subcommand("list-scenarios", "List scenario presets");

  auto* check = app.add_subcommand("check", "Run the invariant suite");
  unsigned long long seed = 20260101;
  std::size_t trials = 20;
  check->add_option("--seed", seed, "Random seed");
  check->add_option("--trials", trials, "Random trials per property")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(scenario, config_path, out_dir, workers, oracle, sets);
    if (*list) {
      for (const auto& s : runner::scenarios()) std::printf("%-8s %s\n", std::string(s.id).c_str(),
                                                            std::string(s.description).c_str());
      return 0;
    }
    if (*check) return check_command(seed, trials);
  } catch (const runner::Failure& e) {
    std::cerr << "levarray: error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "levarray: error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
