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

// Maximizes an entanglement figure of merit over the Bogoliubov coupling
// rates (G1, G2, G3) at a fixed coefficient point, and sweeps that point
// over the (lambda1, lambda2) plane.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "levarray/entanglement.hpp"
#include "levarray/system.hpp"

namespace levarray::optimizer {

using entanglement::Arity;
using Couplings = std::array<double, 3>;

struct Objective {
  Arity arity = Arity::Dyadic;
  int count = 3;  ///< 3: all bipartitions, 2: exactly two, 1: exactly one

  void validate() const;
  std::string name() const;  ///< e.g. "E3^(2)"
};

enum class Symmetry { Free, EqualCouplings };

struct RefinementSettings {
  int seeds_per_axis = 9;
  int refine_starts = 3;
  int max_iterations = 500;
  double spread_tolerance = 1e-7;
};

struct OptimizationProblem {
  Objective objective;
  double g_max = 0.4;
  double lambda1 = 0.0;
  double lambda2 = 1.0;  ///< ignored for ModeFamily::TwoParticle
  system::ModeFamily family = system::ModeFamily::Cyclic;
  system::SystemParams params = system::SystemParams::reference();
  Symmetry symmetry = Symmetry::Free;
  RefinementSettings refinement;

  bool feasible() const noexcept;
  system::BogoliubovSpec spec(const Couplings& g) const;
};

struct Evaluation {
  Couplings couplings{};
  double value = 0.0;  ///< 0 when unstable or unsolvable
  bool stable = false;
  bool solved = false;
  double spectral_abscissa = 0.0;
  std::string failure;
  std::optional<entanglement::EntanglementReport> report;
};

/// One objective evaluation: build the system, check stability, solve the
/// steady state and score it. Never throws for unstable points.
Evaluation evaluate(const OptimizationProblem& problem, const Couplings& g, bool full_report = false);

struct Diagnostics {
  std::size_t evaluations = 0;
  std::size_t unstable = 0;
  std::size_t failed = 0;
  std::size_t refinements = 0;
  int simplex_iterations = 0;
};

struct OptimizationResult {
  Couplings couplings{};
  double value = 0.0;
  Evaluation optimum;  ///< re-evaluated with the full report
  Diagnostics diagnostics;
};

/// Coarse lattice seeding followed by bounded simplex refinement from the
/// best `refine_starts` lattice points. Deterministic.
OptimizationResult optimize_couplings(const OptimizationProblem& problem);

struct LatticeOptimum {
  double value = 0.0;
  Couplings couplings{};
  std::size_t evaluations = 0;
};

/// Exhaustive search over the lattice {0, step, ..., g_max} per coupling
/// (the diagonal only, in equal-couplings mode).
LatticeOptimum brute_force_verify(const OptimizationProblem& problem, double step);

struct Range {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  static Range single(double value) { return {value, value, 1.0}; }
  std::vector<double> values() const;
};

struct SweepGrid {
  Range lambda1;
  Range lambda2;  ///< ignored for ModeFamily::TwoParticle
  OptimizationProblem base;
};

struct SweepRow {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  bool feasible = false;
  OptimizationResult result;
  std::string error;  ///< non-empty when the point failed
};

/// One row per grid point, ordered by (lambda1, lambda2) regardless of the
/// number of workers. Infeasible points are flagged, not optimized.
std::vector<SweepRow> sweep_lambda(const SweepGrid& grid, std::size_t workers = 0);

/// Index of the row with the largest objective value; nullopt if none is feasible.
std::optional<std::size_t> best_row(const std::vector<SweepRow>& rows);

/// Two-particle cyclic modes (lambda3 = 0) optimized for E3^(3).
OptimizationResult two_particle_bogoliubov_scenario(double lambda1, Symmetry symmetry,
                                                    const system::SystemParams& params, double g_max = 0.4,
                                                    const RefinementSettings& refinement = {});

}  // namespace levarray::optimizer
