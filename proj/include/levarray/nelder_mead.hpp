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

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace levarray::optim {

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct NelderMeadSettings {
  int max_iterations = 500;
  double spread_tolerance = 1e-7;  ///< stop when max f - min f over the simplex falls below
  double initial_step = 0.05;
};

struct NelderMeadResult {
  std::vector<double> point;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes `f` inside `box` with the downhill simplex method. Every trial
/// vertex is projected onto the box before evaluation, so the objective is
/// never called outside the bounds.
NelderMeadResult nelder_mead_minimize(const Objective& f, std::vector<double> start, const Box& box,
                                      const NelderMeadSettings& settings = {});

}  // namespace levarray::optim
