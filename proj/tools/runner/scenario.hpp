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


// Scenario execution: sweeps through the C API and CSV emission.
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace levarray::runner {

struct RunOutput {
  std::vector<std::string> files;  ///< paths written, in order
  std::size_t points = 0;          ///< optimized grid points
  std::size_t failed = 0;          ///< feasible points whose optimization failed
};

/// Runs a resolved scenario and writes its CSV files into config.output_dir.
/// Progress goes to `log`. Throws Failure on fatal errors.
RunOutput run_scenario(const ScenarioConfig& config, std::ostream& log);

/// "E3^(2)" style name of an objective.
std::string objective_name(int arity, int count);

}  // namespace levarray::runner
