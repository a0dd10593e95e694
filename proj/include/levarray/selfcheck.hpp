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

#include <cstdint>
#include <string>
#include <vector>

namespace levarray {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Randomized invariant checks over the whole pipeline: Lyapunov residual,
/// physicality, partial-transpose involution, local-rotation invariance,
/// the two-mode-squeezed-vacuum oracle, the uncoupled steady state,
/// cyclic permutation covariance and optimizer dominance over a lattice.
std::vector<CheckResult> run_invariant_suite(std::uint64_t seed = 20260101, std::size_t trials = 20);

}  // namespace levarray
