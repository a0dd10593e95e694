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

#include "levarray/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "levarray/entanglement.hpp"
#include "levarray/error.hpp"
#include "levarray/gaussian.hpp"
#include "levarray/optimizer.hpp"
#include "levarray/system.hpp"

namespace levarray {
namespace {

using gaussian::CovarianceMatrix;
using gaussian::Matrix;

struct RandomState {
  system::BogoliubovSpec spec;
  system::Model model;
  CovarianceMatrix steady;
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  system::BogoliubovSpec spec() {
    const double l1 = uniform(0.0, 1.5);
    const double l2 = uniform(0.0, std::sqrt(1.0 + l1 * l1));
    return system::BogoliubovSpec::from_lambda12(l1, l2, {uniform(0.0, 0.4), uniform(0.0, 0.4), uniform(0.0, 0.4)});
  }

  // Rejection-samples a configuration with a Hurwitz drift.
  RandomState stable_state(const system::SystemParams& params) {
    for (;;) {
      auto s = spec();
      auto model = system::build_model(params, s);
      if (gaussian::spectral_abscissa(model.drift) < -1e-9) {
        auto v = gaussian::lyapunov_solve(model.drift, model.diffusion);
        return {s, std::move(model), std::move(v)};
      }
    }
  }

 private:
  std::mt19937_64 rng_;
};

template <class Fn>
CheckResult run_check(std::string name, Fn&& fn) {
  CheckResult r{std::move(name), false, {}};
  try {
    std::ostringstream detail;
    r.passed = fn(detail);
    r.detail = detail.str();
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

std::array<double, 6> negativities(const CovarianceMatrix& full, const system::SystemParams& params) {
  const auto mech = system::mechanical_block(full, params);
  const auto d = entanglement::dyadic_negativities(mech);
  const auto t = entanglement::triadic_negativities(mech);
  return {d[0], d[1], d[2], t[0], t[1], t[2]};
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed, std::size_t trials) {
  const auto params = system::SystemParams::reference();
  Sampler sampler(seed);
  std::vector<RandomState> states;
  for (std::size_t i = 0; i < trials; ++i) states.push_back(sampler.stable_state(params));

  std::vector<CheckResult> out;
  out.push_back(run_check("lyapunov_residual", [&](std::ostream& d) {
    double worst = 0.0;
    for (const auto& s : states) {
      const double tol = gaussian::kLyapunovResidualTolerance * std::max(1.0, s.model.diffusion.cwiseAbs().maxCoeff());
      worst = std::max(worst, gaussian::lyapunov_residual(s.model.drift, s.model.diffusion, s.steady.matrix()) / tol);
    }
    d << "worst residual / tolerance = " << worst;
    return worst <= 1.0;
  }));
  out.push_back(run_check("physicality", [&](std::ostream& d) {
    double worst = INFINITY;
    for (const auto& s : states) worst = std::min(worst, gaussian::symplectic_eigenvalues(s.steady).front());
    d << "min symplectic eigenvalue = " << worst;
    return worst >= 1.0 - gaussian::kPhysicalTolerance;
  }));
  out.push_back(run_check("partial_transpose_involution", [&](std::ostream& d) {
    std::size_t mismatches = 0;
    for (const auto& s : states) {
      for (std::size_t m = 0; m < s.steady.modes(); ++m) {
        const auto twice = gaussian::partial_transpose(gaussian::partial_transpose(s.steady, {m}), {m});
        if (twice.matrix() != s.steady.matrix()) ++mismatches;
      }
    }
    d << mismatches << " non-identical round trips";
    return mismatches == 0;
  }));
  out.push_back(run_check("local_rotation_invariance", [&](std::ostream& d) {
    double worst = 0.0;
    for (const auto& s : states) {
      const auto mech = system::mechanical_block(s.steady, params);
      const auto base_d = entanglement::dyadic_negativities(mech);
      const auto base_t = entanglement::triadic_negativities(mech);
      for (std::size_t m = 0; m < 3; ++m) {
        const auto rotated = gaussian::rotate_mode(mech, m, sampler.uniform(0.0, 2.0 * M_PI));
        const auto rd = entanglement::dyadic_negativities(rotated);
        const auto rt = entanglement::triadic_negativities(rotated);
        for (std::size_t k = 0; k < 3; ++k) {
          worst = std::max({worst, std::abs(rd[k] - base_d[k]), std::abs(rt[k] - base_t[k])});
        }
      }
    }
    d << "max change = " << worst;
    return worst <= 1e-8;
  }));
  out.push_back(run_check("tmsv_oracle", [&](std::ostream& d) {
    double worst = 0.0;
    for (double r : {0.1, 0.5, 1.0, 2.0}) {
      const double e = gaussian::log_negativity(gaussian::CovarianceMatrix::two_mode_squeezed(r), {{0}, {1}});
      worst = std::max(worst, std::abs(e - 2.0 * r));
    }
    d << "max |E_N - 2r| = " << worst;
    return worst <= 1e-8;
  }));
  out.push_back(run_check("uncoupled_steady_state", [&](std::ostream& d) {
    const auto model = system::build_model(params, system::CouplingMatrix::zero(3, 3));
    const auto v = gaussian::lyapunov_solve(model.drift, model.diffusion);
    Matrix expected = Matrix::Identity(12, 12);
    expected.bottomRightCorner(6, 6) *= 2.0 * params.nbar[0] + 1.0;
    const double err = (v.matrix() - expected).cwiseAbs().maxCoeff() / expected.cwiseAbs().maxCoeff();
    d << "relative deviation = " << err;
    return err <= gaussian::kLyapunovResidualTolerance;
  }));
  out.push_back(run_check("cyclic_permutation_covariance", [&](std::ostream& d) {
    double worst = 0.0;
    for (const auto& s : states) {
      auto shifted = s.spec;
      shifted.couplings = {s.spec.couplings[2], s.spec.couplings[0], s.spec.couplings[1]};
      const auto model = system::build_model(params, shifted);
      if (gaussian::spectral_abscissa(model.drift) >= -gaussian::kStabilityMargin) continue;
      const auto a = negativities(s.steady, params);
      const auto b = negativities(gaussian::lyapunov_solve(model.drift, model.diffusion), params);
      // Shifting the couplings by one relabels particle j as j + 1.
      for (std::size_t k = 0; k < 3; ++k) {
        worst = std::max({worst, std::abs(b[(k + 1) % 3] - a[k]), std::abs(b[3 + (k + 1) % 3] - a[3 + k])});
      }
    }
    d << "max mismatch = " << worst;
    return worst <= 1e-8;
  }));
  out.push_back(run_check("optimizer_dominates_lattice", [&](std::ostream& d) {
    double worst = INFINITY;
    const std::size_t problems = std::max<std::size_t>(1, trials / 10);
    for (std::size_t i = 0; i < problems; ++i) {
      optimizer::OptimizationProblem p;
      const auto spec = sampler.spec();
      p.lambda1 = spec.lambda1;
      p.lambda2 = spec.lambda2;
      p.objective = {i % 2 == 0 ? entanglement::Arity::Triadic : entanglement::Arity::Dyadic, 3 - static_cast<int>(i % 3)};
      p.refinement.seeds_per_axis = 5;
      const double found = optimizer::optimize_couplings(p).value;
      const double lattice = optimizer::brute_force_verify(p, 0.1).value;
      worst = std::min(worst, found - lattice);
    }
    d << "min (optimizer - lattice) = " << worst;
    return worst >= -1e-6;
  }));
  return out;
}

}  // namespace levarray
