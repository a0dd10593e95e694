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


#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "levarray/error.hpp"
#include "levarray/gaussian.hpp"
#include "levarray/system.hpp"

using namespace levarray;
using namespace levarray::system;

namespace {

struct Mode {
  std::array<double, 3> alpha;  // coefficients of b_j
  std::array<double, 3> eta;    // coefficients of b_j^dag
};

// Modes written out term by term from their definition.
std::array<Mode, 3> cyclic_modes(double l1, double l2, double l3) {
  return {{
      {{0.0, l2, l3}, {l1, 0.0, 0.0}},
      {{l3, 0.0, l2}, {0.0, l1, 0.0}},
      {{l2, l3, 0.0}, {0.0, 0.0, l1}},
  }};
}

// H = sum_k G_k (a_k^dag beta_k + h.c.): the a_k^dag b_j coefficient is g_minus(j, k), the a_k^dag b_j^dag
// coefficient is g_plus(j, k).
CouplingMatrix expand_hamiltonian(const std::array<Mode, 3>& modes, const std::array<double, 3>& g) {
  CouplingMatrix c = CouplingMatrix::zero(3, 3);
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j) {
      c.g_minus(j, k) += g[k] * modes[k].alpha[j];
      c.g_plus(j, k) += g[k] * modes[k].eta[j];
    }
  }
  return c;
}

Matrix block(const Matrix& m, std::size_t row_mode, std::size_t col_mode) {
  return m.block(static_cast<Eigen::Index>(2 * row_mode), static_cast<Eigen::Index>(2 * col_mode), 2, 2);
}

}  // namespace

TEST_CASE("couplings with lambda = (0, 0, 1)") {
  const auto c = couplings_from_bogoliubov(BogoliubovSpec::from_lambda12(0.0, 0.0, {1.0, 1.0, 1.0}));
  Matrix expected = Matrix::Zero(3, 3);
  expected(2, 0) = 1.0;  // g-,31
  expected(0, 1) = 1.0;  // g-,12
  expected(1, 2) = 1.0;  // g-,23
  CHECK(c.g_minus == expected);
  CHECK(c.g_plus == Matrix::Zero(3, 3));
}

TEST_CASE("zero couplings give zero tables") {
  const auto c = couplings_from_bogoliubov(BogoliubovSpec::from_lambda12(0.7, 0.3, {0.0, 0.0, 0.0}));
  CHECK(c.g_minus.isZero(0.0));
  CHECK(c.g_plus.isZero(0.0));
}

TEST_CASE("equal couplings at lambda2 = 0.8 put 0.4 lambda1 on the g_plus diagonal") {
  for (double l1 : {0.0, 0.3, 0.55, 1.2}) {
    const auto spec = BogoliubovSpec::from_lambda12(l1, 0.8, {0.4, 0.4, 0.4});
    CHECK(spec.lambda3 == doctest::Approx(std::sqrt(1.0 + l1 * l1 - 0.64)));
    const auto c = couplings_from_bogoliubov(spec);
    for (int k = 0; k < 3; ++k) CHECK(c.g_plus(k, k) == doctest::Approx(0.4 * l1));
    CHECK(c.g_plus.sum() == doctest::Approx(3 * 0.4 * l1));
  }
}

TEST_CASE("coupling table matches a direct expansion of the Hamiltonian") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    const double l1 = u(rng);
    const double l2 = u(rng) * std::sqrt(1.0 + l1 * l1) / 1.5;
    const std::array<double, 3> g{u(rng), u(rng), u(rng)};
    const auto spec = BogoliubovSpec::from_lambda12(l1, l2, g);
    const auto c = couplings_from_bogoliubov(spec);
    const auto expected = expand_hamiltonian(cyclic_modes(l1, l2, spec.lambda3), g);
    CHECK((c.g_minus - expected.g_minus).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((c.g_plus - expected.g_plus).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(c.exclusive());
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(effective_coupling(c, k) == doctest::Approx(g[k] * g[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("two-particle modes drop the third coefficient") {
  const auto spec = BogoliubovSpec::two_particle(0.5, {0.1, 0.2, 0.3});
  CHECK(spec.lambda3 == 0.0);
  CHECK(spec.lambda2 == doctest::Approx(std::sqrt(1.25)));
  const auto c = couplings_from_bogoliubov(spec);
  const auto expected = expand_hamiltonian(cyclic_modes(0.5, spec.lambda2, 0.0), {0.1, 0.2, 0.3});
  CHECK((c.g_minus - expected.g_minus).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((c.g_plus - expected.g_plus).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("specs are checked for normalization and feasibility") {
  CHECK_THROWS_AS(BogoliubovSpec::from_lambda12(0.1, 1.2, {0.1, 0.1, 0.1}), Error);
  BogoliubovSpec bad;
  bad.lambda1 = 0.5;
  bad.lambda2 = 0.5;
  bad.lambda3 = 0.5;
  CHECK_FALSE(bad.normalized());
  try {
    couplings_from_bogoliubov(bad);
    FAIL("expected NotNormalized");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormalized);
  }
}

TEST_CASE("effective coupling examples") {
  CouplingMatrix c = CouplingMatrix::zero(3, 3);
  c.g_minus(0, 0) = 1.0;
  CHECK(effective_coupling(c, 0) == 1.0);
  c.g_plus(1, 0) = 1.0;
  c.g_minus(1, 0) = 0.0;
  CHECK(effective_coupling(c, 0) == 0.0);
  const auto spec = BogoliubovSpec::from_lambda12(0.6, 0.8, {0.4, 0.4, 0.4});
  CHECK(effective_coupling(couplings_from_bogoliubov(spec), 1) == doctest::Approx(0.16).epsilon(1e-12));
}

TEST_CASE("cooperativity examples") {
  const auto params = SystemParams::reference();
  CHECK(cooperativity(0.16, params, 0) == doctest::Approx(400.0).epsilon(1e-9));
  CHECK(cooperativity(0.0, params, 0) == 0.0);
  CHECK(strong_cooperativity(cooperativity(0.16, params, 0)));
  CHECK_FALSE(strong_cooperativity(cooperativity(1e-12, params, 0)));
  const auto cold = SystemParams::uniform(3, 3, 0.4, 2e-10, 0.0);
  CHECK(cooperativity(0.16, cold, 0) == std::numeric_limits<double>::infinity());
}

TEST_CASE("drift with zero coupling is pure damping") {
  const auto params = SystemParams::reference();
  const Matrix a = assemble_drift(CouplingMatrix::zero(3, 3), params);
  Matrix expected = Matrix::Zero(12, 12);
  for (int i = 0; i < 6; ++i) expected(i, i) = -0.2;
  for (int i = 6; i < 12; ++i) expected(i, i) = -1e-10;
  CHECK(a == expected);
}

TEST_CASE("a single beam-splitter pair fills two mirrored blocks") {
  const auto params = SystemParams::reference();
  CouplingMatrix c = CouplingMatrix::zero(3, 3);
  c.g_minus(1, 2) = 0.3;  // particle 2, cavity 3
  const Matrix a = assemble_drift(c, params);
  Matrix coupling_block(2, 2);
  coupling_block << 0.0, 0.3, -0.3, 0.0;
  CHECK(block(a, 2, 4) == coupling_block);
  CHECK(block(a, 4, 2) == coupling_block);
  Matrix off = a;
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().sum() == doctest::Approx(4 * 0.3));
}

TEST_CASE("drift sparsity follows the block layout") {
  const auto params = SystemParams::reference();
  const auto spec = BogoliubovSpec::from_lambda12(0.55, 0.8, {0.4, 0.3, 0.2});
  const auto c = couplings_from_bogoliubov(spec);
  const Matrix a = assemble_drift(c, params);
  for (std::size_t r = 0; r < 6; ++r) {
    for (std::size_t s = 0; s < 6; ++s) {
      const Matrix b = block(a, r, s);
      const bool cavity_r = r < 3;
      const bool cavity_s = s < 3;
      if (r == s) {
        CHECK(b(0, 1) == 0.0);
        CHECK(b(1, 0) == 0.0);
        CHECK(b(0, 0) == b(1, 1));
      } else if (cavity_r == cavity_s) {
        CHECK(b.isZero(0.0));
      } else {
        const std::size_t k = cavity_r ? r : s;
        const std::size_t j = cavity_r ? s - 3 : r - 3;
        const double gm = c.g_minus(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
        const double gp = c.g_plus(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
        CHECK(b(0, 0) == 0.0);
        CHECK(b(1, 1) == 0.0);
        CHECK(b(0, 1) == gm - gp);
        CHECK(b(1, 0) == -gm - gp);
        CHECK(b == block(a, s, r));
      }
    }
  }
  CHECK(gaussian::spectral_abscissa(a) < 0.0);
  CHECK_THROWS_AS(assemble_drift(CouplingMatrix::zero(2, 3), params), Error);
}

TEST_CASE("diffusion matrix entries") {
  const Matrix n = assemble_diffusion(SystemParams::reference());
  for (int i = 0; i < 6; ++i) CHECK(n(i, i) == 0.4);
  for (int i = 6; i < 12; ++i) CHECK(n(i, i) == doctest::Approx(2e-10 * (4e7 + 1)).epsilon(1e-14));
  CHECK(n(6, 6) == doctest::Approx(8e-3).epsilon(1e-6));
  CHECK((n - Matrix(n.diagonal().asDiagonal())).isZero(0.0));
  const Matrix cold = assemble_diffusion(SystemParams::uniform(3, 3, 0.4, 2e-10, 0.0));
  CHECK(cold(8, 8) == 2e-10);
  const Matrix single = assemble_diffusion(SystemParams::uniform(1, 1, 0.7, 1e-3, 0.0));
  CHECK(single.block(0, 0, 2, 2) == 0.7 * Matrix::Identity(2, 2));
}

TEST_CASE("stability check examples") {
  const auto params = SystemParams::reference();
  const auto zero = CouplingMatrix::zero(3, 3);
  const auto report = stability_check(assemble_drift(zero, params), zero);
  CHECK(report.stable);
  CHECK(report.spectral_abscissa == doctest::Approx(-1e-10).epsilon(1e-9));

  CouplingMatrix squeeze = CouplingMatrix::zero(3, 3);
  squeeze.g_plus(0, 0) = 0.3;
  const auto bad = stability_check(assemble_drift(squeeze, params), squeeze);
  CHECK(bad.effective_couplings[0] < 0.0);
  CHECK_FALSE(bad.stable);
}

TEST_CASE("zero-coupling steady state is vacuum optics and thermal mechanics") {
  const auto params = SystemParams::reference();
  const auto model = build_model(params, CouplingMatrix::zero(3, 3));
  const auto v = gaussian::lyapunov_solve(model.drift, model.diffusion);
  Matrix expected = Matrix::Identity(12, 12);
  for (int i = 6; i < 12; ++i) expected(i, i) = 4e7 + 1.0;
  CHECK((v.matrix() - expected).cwiseAbs().maxCoeff() < 1e-8 * 4e7);
  CHECK(mechanical_block(v, params).matrix() == v.matrix().block(6, 6, 6, 6));
}

TEST_CASE("Bogoliubov commutators") {
  SUBCASE("lambda2 = lambda3 removes [beta_a, beta_b]") {
    const auto spec = BogoliubovSpec::from_lambda12(0.7, std::sqrt(1.49 / 2), {1, 1, 1});
    CHECK(spec.lambda3 == doctest::Approx(spec.lambda2));
    CHECK(bogoliubov_commutators(spec).plain.cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("lambda3 = 0 removes [beta_a, beta_b^dag] off the diagonal") {
    const auto c = bogoliubov_commutators(BogoliubovSpec::two_particle(0.4, {1, 1, 1}));
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        CHECK(c.dagger(a, b) == doctest::Approx(a == b ? 1.0 : 0.0));
      }
    }
  }
  SUBCASE("closed form at lambda = (0.5, 0.9, sqrt(0.44))") {
    const auto spec = BogoliubovSpec::from_lambda12(0.5, 0.9, {1, 1, 1});
    const auto c = bogoliubov_commutators(spec);
    const double l3 = std::sqrt(0.44);
    CHECK(c.plain(0, 1) == doctest::Approx(0.5 * (0.9 - l3)).epsilon(1e-12));
    CHECK(c.plain(1, 2) == doctest::Approx(0.5 * (0.9 - l3)).epsilon(1e-12));
    CHECK(c.plain(2, 0) == doctest::Approx(0.5 * (0.9 - l3)).epsilon(1e-12));
    CHECK(c.dagger(0, 1) == doctest::Approx(0.9 * l3).epsilon(1e-12));
    CHECK(c.dagger(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((c.plain + c.plain.transpose()).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("non-orthogonal cooling bound") {
  // Orthogonal case: u1 v1 = u2 v2.
  const double u1 = 0.6;
  const double u2 = std::sqrt(1.36);
  CHECK(nonorthogonal_cooling_bound(u1, u2, u2, u1, 0.0, 0.0) == doctest::Approx(0.0));
  CHECK(-u1 * u2 + u2 * u1 == 0.0);

  const double v1 = std::sqrt(1.64);
  const double v2 = 0.8;
  const double direct = v2 * v2 * (1.0 - u1 * v1 / (u2 * v2));
  CHECK(nonorthogonal_cooling_bound(u1, u2, v1, v2, 0.0, 0.0) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(nonorthogonal_cooling_bound(u1, u2, v1, v2, 0.0, 0.0) > 0.0);

  const double n1 = 3.0;
  const double n2 = 5.0;
  const double full = v1 * v1 * (1.0 - u1 * v2 / (u2 * v1)) * n1 + v2 * v2 * (1.0 - u2 * v1 / (u1 * v2)) * n2 + direct;
  CHECK(nonorthogonal_cooling_bound(u1, u2, v1, v2, n1, n2) == doctest::Approx(full).epsilon(1e-13));
  CHECK_THROWS_AS(nonorthogonal_cooling_bound(0.0, u2, v1, v2, n1, n2), Error);
}

TEST_CASE("SystemParams validation") {
  CHECK_NOTHROW(SystemParams::reference().validate());
  CHECK_THROWS_AS(SystemParams::uniform(3, 3, 0.0, 1e-10, 1.0).validate(), Error);
  CHECK_THROWS_AS(SystemParams::uniform(3, 3, 0.4, 1e-10, -1.0).validate(), Error);
}
