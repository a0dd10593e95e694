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

// Coherent-scattering array model: N particles coupled to N cavity modes.
// All rates are in units of the mechanical frequency.

#include <array>
#include <cstddef>
#include <vector>

#include "levarray/gaussian.hpp"

namespace levarray::system {

using gaussian::Matrix;
using gaussian::Vector;

struct SystemParams {
  std::size_t n_cavities = 3;
  std::size_t n_particles = 3;
  std::vector<double> kappa;  ///< per cavity
  std::vector<double> gamma;  ///< per particle
  std::vector<double> nbar;   ///< per particle

  static SystemParams uniform(std::size_t n_cavities, std::size_t n_particles, double kappa, double gamma,
                              double nbar);

  /// Q = 5e9, nbar = 2e7, kappa = 0.4, three particles and three cavities.
  static SystemParams reference();

  std::size_t modes() const noexcept { return n_cavities + n_particles; }
  void validate() const;
};

inline constexpr double kNormalizationTolerance = 1e-12;

/// Which coefficient family the three cyclic Bogoliubov modes belong to.
enum class ModeFamily {
  Cyclic,        ///< beta_1 = l1 b1^dag + l2 b2 + l3 b3 and cyclic shifts
  TwoParticle,   ///< l3 = 0: beta_1 = l1 b1^dag + l2 b2 and cyclic shifts
};

struct BogoliubovSpec {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 1.0;
  std::array<double, 3> couplings{0.0, 0.0, 0.0};

  /// lambda3 = +sqrt(1 + l1^2 - l2^2); InvalidArgument when negative under the root.
  static BogoliubovSpec from_lambda12(double lambda1, double lambda2, std::array<double, 3> couplings);
  /// lambda3 = 0, lambda2 = sqrt(1 + l1^2).
  static BogoliubovSpec two_particle(double lambda1, std::array<double, 3> couplings);

  static bool feasible(double lambda1, double lambda2) noexcept { return 1.0 + lambda1 * lambda1 - lambda2 * lambda2 >= 0.0; }

  double normalization() const noexcept { return -lambda1 * lambda1 + lambda2 * lambda2 + lambda3 * lambda3; }
  bool normalized() const noexcept;
};

/// beta_k = sum_j annihilation(k, j) b_j + creation(k, j) b_j^dag.
struct ModeCoefficients {
  Matrix annihilation;  ///< modes x particles
  Matrix creation;      ///< modes x particles
};

ModeCoefficients mode_coefficients(const BogoliubovSpec& spec);

/// g_minus(j, k) and g_plus(j, k) between particle j and cavity k.
struct CouplingMatrix {
  Matrix g_minus;
  Matrix g_plus;

  static CouplingMatrix zero(std::size_t n_particles, std::size_t n_cavities);
  std::size_t n_particles() const noexcept { return static_cast<std::size_t>(g_minus.rows()); }
  std::size_t n_cavities() const noexcept { return static_cast<std::size_t>(g_minus.cols()); }
  /// No (j, k) carries both a beam-splitter and a two-mode-squeezing term.
  bool exclusive() const;
};

/// Expands sum_k G_k (a_k^dag beta_k + h.c.) into particle-cavity rates.
CouplingMatrix couplings_from_bogoliubov(const BogoliubovSpec& spec);

/// G^2 = sum_j g_minus(j,k)^2 - g_plus(j,k)^2 for cavity k. Negative values
/// mean the two-mode-squeezing terms dominate.
double effective_coupling(const CouplingMatrix& coupling, std::size_t cavity);

/// 4 G^2 / (kappa gamma nbar). Returns +inf when nbar = 0 and G^2 > 0.
double cooperativity(double effective_coupling_sq, const SystemParams& params, std::size_t cavity);

inline bool strong_cooperativity(double c) noexcept { return c > 1.0; }

Matrix assemble_drift(const CouplingMatrix& coupling, const SystemParams& params);
Matrix assemble_diffusion(const SystemParams& params);

struct StabilityReport {
  double spectral_abscissa = 0.0;
  std::vector<double> effective_couplings;
  bool stable = false;
};

StabilityReport stability_check(const Matrix& drift, const CouplingMatrix& coupling);

/// [beta_a, beta_b] and [beta_a, beta_b^dag] for every ordered pair.
struct Commutators {
  Matrix plain;   ///< [beta_a, beta_b]
  Matrix dagger;  ///< [beta_a, beta_b^dag]
};

Commutators bogoliubov_commutators(const BogoliubovSpec& spec);

/// Occupation <beta_2^dag beta_2> of beta_2 = v1 b1 + v2 b2^dag when
/// beta_1 = u1 b1^dag + u2 b2 sits in its ground state.
double nonorthogonal_cooling_bound(double u1, double u2, double v1, double v2, double n1, double n2);

/// Drift, diffusion and couplings of one configuration.
struct Model {
  SystemParams params;
  CouplingMatrix coupling;
  Matrix drift;
  Matrix diffusion;
};

Model build_model(const SystemParams& params, const CouplingMatrix& coupling);
Model build_model(const SystemParams& params, const BogoliubovSpec& spec);

/// Mechanical block of the steady state (last 2 * n_particles quadratures).
gaussian::CovarianceMatrix mechanical_block(const gaussian::CovarianceMatrix& full, const SystemParams& params);

}  // namespace levarray::system
