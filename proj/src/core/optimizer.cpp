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

#include "levarray/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "levarray/error.hpp"
#include "levarray/gaussian.hpp"
#include "levarray/nelder_mead.hpp"
#include "levarray/parallel.hpp"

namespace levarray::optimizer {
namespace {

std::vector<double> axis(double g_max, int points) {
  if (points < 1) throw Error(ErrorCode::InvalidArgument, "lattice needs at least one point per axis");
  if (points == 1 || g_max == 0.0) return {0.0};
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = g_max * i / (points - 1);
  return out;
}

std::vector<Couplings> lattice(const std::vector<double>& values, Symmetry symmetry) {
  std::vector<Couplings> out;
  if (symmetry == Symmetry::EqualCouplings) {
    for (double g : values) out.push_back({g, g, g});
    return out;
  }
  for (double g1 : values)
    for (double g2 : values)
      for (double g3 : values) out.push_back({g1, g2, g3});
  return out;
}

void check_problem(const OptimizationProblem& problem) {
  problem.objective.validate();
  problem.params.validate();
  if (!(problem.g_max >= 0.0)) throw Error(ErrorCode::InvalidArgument, "g_max must be nonnegative");
  if (!problem.feasible()) throw Error(ErrorCode::InvalidArgument, "lambda point violates 1 + l1^2 - l2^2 >= 0");
}

// Best stable evaluation seen so far; the first of equal values wins.
struct Incumbent {
  double value = -1.0;
  Couplings couplings{};

  void offer(const Evaluation& e) {
    if (e.stable && e.solved && e.value > value) {
      value = e.value;
      couplings = e.couplings;
    }
  }
};

double round_grid(double v) { return std::round(v * 1e12) / 1e12; }

}  // namespace

void Objective::validate() const {
  if (count < 1 || count > 3) throw Error(ErrorCode::InvalidArgument, "objective count must be 1, 2 or 3");
  if (arity != Arity::Dyadic && arity != Arity::Triadic) throw Error(ErrorCode::InvalidArgument, "arity must be 2 or 3");
}

std::string Objective::name() const {
  std::ostringstream s;
  s << "E" << count << "^(" << static_cast<int>(arity) << ")";
  return s.str();
}

bool OptimizationProblem::feasible() const noexcept {
  return family == system::ModeFamily::TwoParticle || system::BogoliubovSpec::feasible(lambda1, lambda2);
}

system::BogoliubovSpec OptimizationProblem::spec(const Couplings& g) const {
  return family == system::ModeFamily::TwoParticle ? system::BogoliubovSpec::two_particle(lambda1, g)
                                                   : system::BogoliubovSpec::from_lambda12(lambda1, lambda2, g);
}

Evaluation evaluate(const OptimizationProblem& problem, const Couplings& g, bool full_report) {
  Evaluation e;
  e.couplings = g;
  if (!problem.feasible()) {
    e.failure = "infeasible lambda point";
    return e;
  }
  const system::BogoliubovSpec spec = problem.spec(g);
  const system::Model model = system::build_model(problem.params, spec);
  e.spectral_abscissa = gaussian::spectral_abscissa(model.drift);
  e.stable = e.spectral_abscissa < -gaussian::kStabilityMargin;
  if (!e.stable) {
    e.failure = "unstable drift";
    return e;
  }
  try {
    const auto full = gaussian::detail::lyapunov_solve_hurwitz(model.drift, model.diffusion);
    const auto mech = system::mechanical_block(full, problem.params);
    if (full_report) {
      e.report = entanglement::analyze(mech, spec);
      e.value = e.report->merit(problem.objective.arity).by_count(problem.objective.count);
    } else {
      const auto values = problem.objective.arity == Arity::Dyadic ? entanglement::dyadic_negativities(mech)
                                                                   : entanglement::triadic_negativities(mech);
      e.value = entanglement::figures_of_merit(values, problem.objective.arity).by_count(problem.objective.count);
    }
    e.solved = true;
  } catch (const Error& err) {
    if (err.code() != ErrorCode::SolveFailure && err.code() != ErrorCode::NumericalFailure) throw;
    e.failure = err.what();
    e.value = 0.0;
  }
  return e;
}

OptimizationResult optimize_couplings(const OptimizationProblem& problem) {
  check_problem(problem);
  const RefinementSettings& settings = problem.refinement;
  OptimizationResult out;
  Incumbent best;

  auto score = [&](const Couplings& g) {
    Evaluation e = evaluate(problem, g);
    ++out.diagnostics.evaluations;
    if (!e.stable) ++out.diagnostics.unstable;
    else if (!e.solved) ++out.diagnostics.failed;
    best.offer(e);
    return e;
  };

  struct Seed {
    double value;
    std::size_t order;
    Couplings g;
  };
  std::vector<Seed> seeds;
  const auto points = lattice(axis(problem.g_max, settings.seeds_per_axis), problem.symmetry);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Evaluation e = score(points[i]);
    if (e.stable && e.solved) seeds.push_back({e.value, i, points[i]});
  }
  if (seeds.empty()) throw Error(ErrorCode::AllUnstable, "every lattice point is dynamically unstable");
  std::stable_sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) { return a.value > b.value; });

  if (problem.g_max > 0.0) {
    const bool equal = problem.symmetry == Symmetry::EqualCouplings;
    const std::size_t dims = equal ? 1 : 3;
    optim::Box box{std::vector<double>(dims, 0.0), std::vector<double>(dims, problem.g_max)};
    optim::NelderMeadSettings nm;
    nm.max_iterations = settings.max_iterations;
    nm.spread_tolerance = settings.spread_tolerance;
    nm.initial_step = problem.g_max / std::max(1, settings.seeds_per_axis - 1) / 2.0;
    auto to_couplings = [equal](std::span<const double> x) {
      return equal ? Couplings{x[0], x[0], x[0]} : Couplings{x[0], x[1], x[2]};
    };
    const std::size_t starts = std::min<std::size_t>(seeds.size(), static_cast<std::size_t>(std::max(0, settings.refine_starts)));
    for (std::size_t s = 0; s < starts; ++s) {
      std::vector<double> start(seeds[s].g.begin(), seeds[s].g.begin() + static_cast<std::ptrdiff_t>(dims));
      const auto r = optim::nelder_mead_minimize([&](std::span<const double> x) { return -score(to_couplings(x)).value; },
                                                 std::move(start), box, nm);
      ++out.diagnostics.refinements;
      out.diagnostics.simplex_iterations += r.iterations;
    }
  }

  out.optimum = evaluate(problem, best.couplings, true);
  out.couplings = best.couplings;
  out.value = out.optimum.value;
  return out;
}

LatticeOptimum brute_force_verify(const OptimizationProblem& problem, double step) {
  check_problem(problem);
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "lattice step must be positive");
  const double intervals = problem.g_max / step;
  const long count = std::lround(intervals);
  if (std::abs(intervals - static_cast<double>(count)) > 1e-9 * std::max(1.0, intervals)) {
    throw Error(ErrorCode::InvalidArgument, "lattice step does not divide the coupling range");
  }
  LatticeOptimum out;
  Incumbent best;
  for (const Couplings& g : lattice(axis(problem.g_max, static_cast<int>(count) + 1), problem.symmetry)) {
    best.offer(evaluate(problem, g));
    ++out.evaluations;
  }
  if (best.value < 0.0) throw Error(ErrorCode::AllUnstable, "every lattice point is dynamically unstable");
  out.value = best.value;
  out.couplings = best.couplings;
  return out;
}

std::vector<double> Range::values() const {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "range step must be positive");
  if (max < min) throw Error(ErrorCode::InvalidArgument, "range max below min");
  const auto n = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = round_grid(min + static_cast<double>(i) * step);
  return out;
}

std::vector<SweepRow> sweep_lambda(const SweepGrid& grid, std::size_t workers) {
  const bool two_particle = grid.base.family == system::ModeFamily::TwoParticle;
  std::vector<SweepRow> rows;
  for (double l1 : grid.lambda1.values()) {
    const std::vector<double> l2s = two_particle ? std::vector<double>{std::sqrt(1.0 + l1 * l1)} : grid.lambda2.values();
    for (double l2 : l2s) {
      SweepRow row;
      row.lambda1 = l1;
      row.lambda2 = l2;
      row.feasible = two_particle || system::BogoliubovSpec::feasible(l1, l2);
      row.lambda3 = two_particle || !row.feasible ? 0.0 : std::sqrt(1.0 + l1 * l1 - l2 * l2);
      rows.push_back(std::move(row));
    }
  }
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    SweepRow& row = rows[i];
    if (!row.feasible) {
      row.error = "infeasible lambda point";
      return;
    }
    OptimizationProblem problem = grid.base;
    problem.lambda1 = row.lambda1;
    problem.lambda2 = row.lambda2;
    try {
      row.result = optimize_couplings(problem);
    } catch (const Error& err) {
      row.error = err.what();
    }
  });
  return rows;
}

std::optional<std::size_t> best_row(const std::vector<SweepRow>& rows) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].feasible || !rows[i].error.empty()) continue;
    if (!best || rows[i].result.value > rows[*best].result.value) best = i;
  }
  return best;
}

OptimizationResult two_particle_bogoliubov_scenario(double lambda1, Symmetry symmetry,
                                                    const system::SystemParams& params, double g_max,
                                                    const RefinementSettings& refinement) {
  OptimizationProblem problem;
  problem.objective = {Arity::Triadic, 3};
  problem.family = system::ModeFamily::TwoParticle;
  problem.lambda1 = lambda1;
  problem.lambda2 = std::sqrt(1.0 + lambda1 * lambda1);
  problem.params = params;
  problem.symmetry = symmetry;
  problem.g_max = g_max;
  problem.refinement = refinement;
  return optimize_couplings(problem);
}

}  // namespace levarray::optimizer
