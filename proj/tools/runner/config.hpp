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


// Flat key=value configuration for scenario runs.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "levarray/levarray.h"

namespace levarray::runner {

struct Grid {
  levarray_range lambda1{0.0, 1.5, 0.02};
  levarray_range lambda2{0.0, 1.5, 0.02};
};

struct ScenarioConfig {
  std::string scenario;
  levarray_params params{};
  levarray_problem problem{};
  bool landscape = true;
  Grid grid;
  std::vector<double> cut_lambda2;  ///< lambda2 values of the cut lines
  double cut_lambda1_step = 0.01;
  std::vector<double> cut_nbar;     ///< nbar values cut in addition to params.nbar
  std::string output_dir;           ///< resolved
  std::size_t workers = 1;
  bool oracle = false;
  double oracle_step = 0.05;
};

struct ScenarioInfo {
  std::string_view id;
  std::string_view description;
};

const std::vector<ScenarioInfo>& scenarios();

/// Objective and cut lines of the six landscape presets (fig2a..fig3c).
struct Preset {
  std::string_view id;
  int arity;
  int count;
  levarray_symmetry symmetry;
  std::vector<double> cuts;
};

const std::vector<Preset>& presets();
std::optional<Preset> preset(std::string_view id);
bool is_scenario(std::string_view id);

/// Resolves a configuration: preset defaults, then the file (if any), then
/// `overrides` of the form key=value. Throws Failure(LEVARRAY_E_CONFIG).
ScenarioConfig parse_config(std::string_view scenario, const std::optional<std::string>& path,
                            const std::vector<std::string>& overrides);

/// Same, reading the file body from a string; `origin` names it in errors.
ScenarioConfig parse_config_text(std::string_view scenario, std::string_view text, std::string_view origin,
                                 const std::vector<std::string>& overrides);

}  // namespace levarray::runner
