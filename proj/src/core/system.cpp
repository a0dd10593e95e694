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

#include "levarray/system.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "levarray/error.hpp"

namespace levarray::system {
namespace {

using Index = Eigen::Index;

Index cavity_row(std::size_t k) { return static_cast<Index>(2 * k); }
Index particle_row(const SystemParams& params, std::size_t j) {
  return static_cast<Index>(2 * (params.n_cavities + j));
}

}  // namespace

SystemParams SystemParams::uniform(std::size_t n_cavities, std::size_t n_particles, double kappa, double gamma,
                                   double nbar) {
  SystemParams p;
  p.n_cavities = n_cavities;
  p.n_particles = n_particles;
  p.kappa.assign(n_cavities, kappa);
  p.gamma.assign(n_particles, gamma);
  p.nbar.assign(n_particles, nbar);
  p.validate();
  return p;
}

SystemParams SystemParams::reference() { return uniform(3, 3, 0.4, 1.0 / 5e9, 2e7); }

void SystemParams::validate() const {
  if (n_cavities == 0 || n_particles == 0) throw Error(ErrorCode::InvalidArgument, "mode counts must be positive");
  if (kappa.size() != n_cavities || gamma.size() != n_particles || nbar.size() != n_particles) {
    throw Error(ErrorCode::ShapeMismatch, "per-mode rate vectors do not match the mode counts");
  }
  for (double k : kappa)
    if (!(k > 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa must be positive");
  for (double g : gamma)
    if (!(g > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma must be positive");
  for (double n : nbar)
    if (!(n >= 0.0)) throw Error(ErrorCode::InvalidArgument, "nbar must be nonnegative");
}

BogoliubovSpec BogoliubovSpec::from_lambda12(double lambda1, double lambda2, std::array<double, 3> couplings) {
  if (!feasible(lambda1, lambda2)) {
    std::ostringstream msg;
    msg << "lambda point (" << lambda1 << ", " << lambda2 << ") has 1 + l1^2 - l2^2 < 0";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  return {lambda1, lambda2, std::sqrt(1.0 + lambda1 * lambda1 - lambda2 * lambda2), couplings};
}

BogoliubovSpec BogoliubovSpec::two_particle(double lambda1, std::array<double, 3> couplings) {
  return {lambda1, std::sqrt(1.0 + lambda1 * lambda1), 0.0, couplings};
}

bool BogoliubovSpec::normalized() const noexcept {
  return std::abs(normalization() - 1.0) <= kNormalizationTolerance;
}

ModeCoefficients mode_coefficients(const BogoliubovSpec& spec) {
  const double l1 = spec.lambda1, l2 = spec.lambda2, l3 = spec.lambda3;
  ModeCoefficients c{Matrix::Zero(3, 3), Matrix::Zero(3, 3)};
  // Mode k carries lambda1 on the creation operator of particle k; the
  // annihilation coefficients of the other two particles follow cyclically.
  c.creation(0, 0) = l1;
  c.annihilation(0, 1) = l2;
  c.annihilation(0, 2) = l3;
  c.annihilation(1, 0) = l3;
  c.creation(1, 1) = l1;
  c.annihilation(1, 2) = l2;
  c.annihilation(2, 0) = l2;
  c.annihilation(2, 1) = l3;
  c.creation(2, 2) = l1;
  return c;
}

CouplingMatrix CouplingMatrix::zero(std::size_t n_particles, std::size_t n_cavities) {
  const auto p = static_cast<Index>(n_particles), c = static_cast<Index>(n_cavities);
  return {Matrix::Zero(p, c), Matrix::Zero(p, c)};
}

bool CouplingMatrix::exclusive() const {
  return (g_minus.array() != 0.0 && g_plus.array() != 0.0).count() == 0;
}

CouplingMatrix couplings_from_bogoliubov(const BogoliubovSpec& spec) {
  if (!spec.normalized()) {
    std::ostringstream msg;
    msg << "-l1^2 + l2^2 + l3^2 = " << spec.normalization() << ", expected 1";
    throw Error(ErrorCode::NotNormalized, msg.str());
  }
  const ModeCoefficients modes = mode_coefficients(spec);
  CouplingMatrix out = CouplingMatrix::zero(3, 3);
  for (Index k = 0; k < 3; ++k) {
    const double g = spec.couplings[static_cast<std::size_t>(k)];
    out.g_minus.col(k) = g * modes.annihilation.row(k).transpose();
    out.g_plus.col(k) = g * modes.creation.row(k).transpose();
  }
  return out;
}

double effective_coupling(const CouplingMatrix& coupling, std::size_t cavity) {
  if (cavity >= coupling.n_cavities()) throw Error(ErrorCode::IndexOutOfRange, "cavity index out of range");
  const auto k = static_cast<Index>(cavity);
  return coupling.g_minus.col(k).squaredNorm() - coupling.g_plus.col(k).squaredNorm();
}

double cooperativity(double effective_coupling_sq, const SystemParams& params, std::size_t cavity) {
  if (cavity >= params.n_cavities) throw Error(ErrorCode::IndexOutOfRange, "cavity index out of range");
  if (effective_coupling_sq == 0.0) return 0.0;
  double heating = 0.0;
  for (std::size_t j = 0; j < params.n_particles; ++j) heating += params.gamma[j] * params.nbar[j];
  heating /= static_cast<double>(params.n_particles);
  const double denominator = params.kappa[cavity] * heating;
  if (denominator == 0.0) {
    return std::copysign(std::numeric_limits<double>::infinity(), effective_coupling_sq);
  }
  return 4.0 * effective_coupling_sq / denominator;
}

Matrix assemble_drift(const CouplingMatrix& coupling, const SystemParams& params) {
  params.validate();
  if (coupling.n_particles() != params.n_particles || coupling.n_cavities() != params.n_cavities ||
      coupling.g_plus.rows() != coupling.g_minus.rows() || coupling.g_plus.cols() != coupling.g_minus.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "coupling tables do not match the system size");
  }
  const auto dim = static_cast<Index>(2 * params.modes());
  Matrix a = Matrix::Zero(dim, dim);
  for (std::size_t k = 0; k < params.n_cavities; ++k) {
    a(cavity_row(k), cavity_row(k)) = a(cavity_row(k) + 1, cavity_row(k) + 1) = -0.5 * params.kappa[k];
  }
  for (std::size_t j = 0; j < params.n_particles; ++j) {
    const Index r = particle_row(params, j);
    a(r, r) = a(r + 1, r + 1) = -0.5 * params.gamma[j];
  }
  for (std::size_t j = 0; j < params.n_particles; ++j) {
    for (std::size_t k = 0; k < params.n_cavities; ++k) {
      const double gm = coupling.g_minus(static_cast<Index>(j), static_cast<Index>(k));
      const double gp = coupling.g_plus(static_cast<Index>(j), static_cast<Index>(k));
      const Index c = cavity_row(k), m = particle_row(params, j);
      // Same 2x2 block [[0, g- - g+], [-g- - g+, 0]] in both off-diagonal positions.
      a(c, m + 1) = a(m, c + 1) = gm - gp;
      a(c + 1, m) = a(m + 1, c) = -gm - gp;
    }
  }
  return a;
}

Matrix assemble_diffusion(const SystemParams& params) {
  params.validate();
  const auto dim = static_cast<Index>(2 * params.modes());
  Vector diag(dim);
  for (std::size_t k = 0; k < params.n_cavities; ++k) diag(cavity_row(k)) = diag(cavity_row(k) + 1) = params.kappa[k];
  for (std::size_t j = 0; j < params.n_particles; ++j) {
    const Index r = particle_row(params, j);
    diag(r) = diag(r + 1) = params.gamma[j] * (2.0 * params.nbar[j] + 1.0);
  }
  return diag.asDiagonal();
}

StabilityReport stability_check(const Matrix& drift, const CouplingMatrix& coupling) {
  StabilityReport report;
  report.spectral_abscissa = gaussian::spectral_abscissa(drift);
  for (std::size_t k = 0; k < coupling.n_cavities(); ++k) report.effective_couplings.push_back(effective_coupling(coupling, k));
  report.stable = report.spectral_abscissa < -gaussian::kStabilityMargin;
  return report;
}

Commutators bogoliubov_commutators(const BogoliubovSpec& spec) {
  if (!spec.normalized()) throw Error(ErrorCode::NotNormalized, "Bogoliubov coefficients not normalized");
  const ModeCoefficients c = mode_coefficients(spec);
  return {c.annihilation * c.creation.transpose() - c.creation * c.annihilation.transpose(),
          c.annihilation * c.annihilation.transpose() - c.creation * c.creation.transpose()};
}

double nonorthogonal_cooling_bound(double u1, double u2, double v1, double v2, double n1, double n2) {
  if (u1 == 0.0 || u2 == 0.0 || v1 == 0.0 || v2 == 0.0) {
    throw Error(ErrorCode::DivisionByZero, "Bogoliubov coefficients must be nonzero");
  }
  if (n1 < 0.0 || n2 < 0.0) throw Error(ErrorCode::InvalidArgument, "occupations must be nonnegative");
  return v1 * v1 * (1.0 - u1 * v2 / (u2 * v1)) * n1 + v2 * v2 * (1.0 - u2 * v1 / (u1 * v2)) * n2 +
         v2 * v2 * (1.0 - u1 * v1 / (u2 * v2));
}

Model build_model(const SystemParams& params, const CouplingMatrix& coupling) {
  return {params, coupling, assemble_drift(coupling, params), assemble_diffusion(params)};
}

Model build_model(const SystemParams& params, const BogoliubovSpec& spec) {
  if (params.n_particles != 3 || params.n_cavities != 3) {
    throw Error(ErrorCode::ShapeMismatch, "cyclic Bogoliubov modes need three particles and three cavities");
  }
  return build_model(params, couplings_from_bogoliubov(spec));
}

gaussian::CovarianceMatrix mechanical_block(const gaussian::CovarianceMatrix& full, const SystemParams& params) {
  if (full.modes() != params.modes()) throw Error(ErrorCode::ShapeMismatch, "covariance does not match the system");
  gaussian::ModeSet keep(params.n_particles);
  std::iota(keep.begin(), keep.end(), params.n_cavities);
  return gaussian::reduce(full, keep);
}

}  // namespace levarray::system
