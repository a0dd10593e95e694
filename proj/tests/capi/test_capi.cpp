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


#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "levarray/levarray.h"

namespace {

levarray_params reference() {
  levarray_params p;
  REQUIRE(levarray_params_reference(&p) == LEVARRAY_OK);
  return p;
}

std::vector<double> tmsv(double r) {
  const double c = std::cosh(2 * r);
  const double s = std::sinh(2 * r);
  return {c, 0, s, 0, 0, c, 0, -s, s, 0, c, 0, 0, -s, 0, c};
}

}  // namespace

TEST_CASE("status strings and version") {
  CHECK(std::string(levarray_status_string(LEVARRAY_OK)) == "ok");
  CHECK(std::string(levarray_status_string(LEVARRAY_E_NOT_STABLE)).find("stable") != std::string::npos);
  CHECK(std::string(levarray_version()) == "0.1.0");
}

TEST_CASE("reference parameters") {
  const auto p = reference();
  CHECK(p.kappa == 0.4);
  CHECK(p.gamma == doctest::Approx(2e-10));
  CHECK(p.nbar == 2e7);
}

TEST_CASE("null arguments are rejected with a message") {
  CHECK(levarray_params_reference(nullptr) == LEVARRAY_E_INVALID_ARGUMENT);
  CHECK(std::strlen(levarray_last_error()) > 0);
  levarray_state* state = nullptr;
  CHECK(levarray_state_create(nullptr, nullptr, &state) == LEVARRAY_E_INVALID_ARGUMENT);
  CHECK(state == nullptr);
  CHECK(levarray_params_reference(nullptr) != LEVARRAY_OK);
  levarray_params p = reference();
  CHECK(std::strlen(levarray_last_error()) == 0);
  (void)p;
}

TEST_CASE("Lyapunov solve through row-major buffers") {
  const double a[4] = {-0.5, 0.0, 0.0, -0.5};
  const double n[4] = {21.0, 0.0, 0.0, 21.0};
  double v[4];
  REQUIRE(levarray_lyapunov_solve(a, n, 2, v) == LEVARRAY_OK);
  CHECK(v[0] == doctest::Approx(21.0));
  CHECK(v[1] == doctest::Approx(0.0));
  const double unstable[4] = {0.1, 0.0, 0.0, -0.5};
  CHECK(levarray_lyapunov_solve(unstable, n, 2, v) == LEVARRAY_E_NOT_STABLE);
  const double asym[4] = {21.0, 1.0, 0.0, 21.0};
  CHECK(levarray_lyapunov_solve(a, asym, 2, v) != LEVARRAY_OK);
}

TEST_CASE("TMSV spectrum and negativity") {
  const auto v = tmsv(1.0);
  double nu[2];
  REQUIRE(levarray_symplectic_eigenvalues(v.data(), 4, nu) == LEVARRAY_OK);
  CHECK(nu[0] == doctest::Approx(1.0));
  const size_t a = 0;
  const size_t b = 1;
  double e = 0.0;
  REQUIRE(levarray_log_negativity(v.data(), 4, &a, 1, &b, 1, &e) == LEVARRAY_OK);
  CHECK(e == doctest::Approx(2.0).epsilon(1e-10));
  const size_t bad = 2;
  CHECK(levarray_log_negativity(v.data(), 4, &a, 1, &bad, 1, &e) == LEVARRAY_E_INDEX_OUT_OF_RANGE);
  CHECK(levarray_symplectic_eigenvalues(v.data(), 3, nu) == LEVARRAY_E_SHAPE_MISMATCH);
}

TEST_CASE("steady state handle") {
  const auto params = reference();
  const levarray_bogoliubov spec{LEVARRAY_FAMILY_CYCLIC, 0.55, 0.8, {0.4, 0.4, 0.4}};
  levarray_state* state = nullptr;
  REQUIRE(levarray_state_create(&params, &spec, &state) == LEVARRAY_OK);

  double v[144];
  CHECK(levarray_state_covariance(state, v, 100) == LEVARRAY_E_BUFFER_TOO_SMALL);
  REQUIRE(levarray_state_covariance(state, v, 144) == LEVARRAY_OK);
  CHECK(v[1 * 12 + 5] == v[5 * 12 + 1]);
  double abscissa = 0.0;
  REQUIRE(levarray_state_spectral_abscissa(state, &abscissa) == LEVARRAY_OK);
  CHECK(abscissa < 0.0);

  levarray_report report;
  REQUIRE(levarray_state_report(state, &report) == LEVARRAY_OK);
  CHECK(report.dyadic[0] == doctest::Approx(report.dyadic[1]).epsilon(1e-6));
  CHECK(report.dyadic[0] == doctest::Approx(report.dyadic[2]).epsilon(1e-6));
  CHECK(report.dyadic_merit[2] == doctest::Approx(report.dyadic[0]).epsilon(1e-6));
  CHECK(report.dyadic_gated[0] == 1);
  CHECK(report.has_occupations == 1);
  CHECK(report.squeezed_count > 0);

  REQUIRE(levarray_catalog_size() > 0);
  CHECK(levarray_catalog_label(levarray_catalog_size()) == nullptr);
  bool found = false;
  for (size_t i = 0; i < levarray_catalog_size(); ++i) {
    if (std::string(levarray_catalog_label(i)) != "(p1-p2)/sqrt2") continue;
    double variance = 0.0;
    REQUIRE(levarray_state_catalog_variance(state, i, &variance) == LEVARRAY_OK);
    CHECK(variance < 1.0);
    found = true;
  }
  CHECK(found);
  double dummy = 0.0;
  CHECK(levarray_state_catalog_variance(state, 1000, &dummy) == LEVARRAY_E_INDEX_OUT_OF_RANGE);
  const size_t all[3] = {0, 1, 2};
  double minimum = 0.0;
  REQUIRE(levarray_state_min_variance(state, all, 3, &minimum) == LEVARRAY_OK);
  CHECK(minimum < 1.0);
  levarray_state_free(state);
  levarray_state_free(nullptr);
}

TEST_CASE("state errors") {
  const auto params = reference();
  levarray_state* state = nullptr;
  const levarray_bogoliubov infeasible{LEVARRAY_FAMILY_CYCLIC, 0.1, 1.5, {0.1, 0.1, 0.1}};
  CHECK(levarray_state_create(&params, &infeasible, &state) == LEVARRAY_E_INVALID_ARGUMENT);
  const double zero[9] = {};
  double squeeze[9] = {};
  squeeze[0] = 0.3;
  CHECK(levarray_state_create_couplings(&params, zero, squeeze, &state) == LEVARRAY_E_NOT_STABLE);
  double both[9] = {};
  both[0] = 0.3;
  CHECK(levarray_state_create_couplings(&params, both, squeeze, &state) == LEVARRAY_E_INVALID_ARGUMENT);
  CHECK(state == nullptr);
  REQUIRE(levarray_state_create_couplings(&params, zero, zero, &state) == LEVARRAY_OK);
  double v[144];
  REQUIRE(levarray_state_covariance(state, v, 144) == LEVARRAY_OK);
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(v[6 * 12 + 6] == doctest::Approx(4e7 + 1).epsilon(1e-8));
  levarray_state_free(state);
}

TEST_CASE("optimization through the C API") {
  const auto params = reference();
  levarray_problem problem;
  REQUIRE(levarray_problem_default(&problem) == LEVARRAY_OK);
  CHECK(problem.arity == 2);
  CHECK(problem.count == 3);
  CHECK(problem.g_max == 0.4);
  CHECK(problem.seeds_per_axis == 9);

  problem.lambda1 = 0.55;
  problem.lambda2 = 0.8;
  problem.symmetry = LEVARRAY_EQUAL_COUPLINGS;
  levarray_optimum opt;
  REQUIRE(levarray_optimize(&params, &problem, &opt) == LEVARRAY_OK);
  CHECK(opt.stable == 1);
  CHECK(opt.couplings[0] == opt.couplings[2]);
  CHECK(opt.value == doctest::Approx(opt.report.dyadic_merit[2]));

  double lattice = 0.0;
  double g[3];
  REQUIRE(levarray_brute_force(&params, &problem, 0.05, &lattice, g) == LEVARRAY_OK);
  CHECK(opt.value >= lattice - 1e-6);
  CHECK(levarray_brute_force(&params, &problem, 0.3, &lattice, g) == LEVARRAY_E_INVALID_ARGUMENT);

  problem.g_max = 0.0;
  REQUIRE(levarray_optimize(&params, &problem, &opt) == LEVARRAY_OK);
  CHECK(opt.value == 0.0);
  problem.arity = 4;
  CHECK(levarray_optimize(&params, &problem, &opt) == LEVARRAY_E_INVALID_ARGUMENT);
}

TEST_CASE("sweep handle") {
  const auto params = reference();
  levarray_problem problem;
  REQUIRE(levarray_problem_default(&problem) == LEVARRAY_OK);
  problem.arity = 3;
  problem.count = 1;
  problem.seeds_per_axis = 3;
  levarray_sweep* sweep = nullptr;
  REQUIRE(levarray_sweep_run(&params, &problem, {0.0, 0.2, 0.2}, {1.0, 1.1, 0.1}, 2, &sweep) == LEVARRAY_OK);
  REQUIRE(levarray_sweep_size(sweep) == 4);
  int infeasible = 0;
  for (size_t i = 0; i < 4; ++i) {
    levarray_sweep_row row;
    REQUIRE(levarray_sweep_row_at(sweep, i, &row) == LEVARRAY_OK);
    infeasible += row.feasible ? 0 : 1;
    if (row.feasible) CHECK(std::string(levarray_sweep_row_error(sweep, i)).empty());
  }
  CHECK(infeasible == 2);  // lambda2 = 1.1 for both lambda1
  levarray_sweep_row row;
  CHECK(levarray_sweep_row_at(sweep, 4, &row) == LEVARRAY_E_INDEX_OUT_OF_RANGE);
  levarray_sweep_free(sweep);
}

TEST_CASE("invariant suite handle") {
  levarray_check* check = nullptr;
  REQUIRE(levarray_check_run(3, 2, &check) == LEVARRAY_OK);
  REQUIRE(levarray_check_size(check) >= 8);
  for (size_t i = 0; i < levarray_check_size(check); ++i) {
    const char* name = nullptr;
    const char* detail = nullptr;
    int passed = 0;
    REQUIRE(levarray_check_result(check, i, &name, &passed, &detail) == LEVARRAY_OK);
    CAPTURE(name);
    CHECK(passed == 1);
  }
  CHECK(levarray_check_result(check, 100, nullptr, nullptr, nullptr) == LEVARRAY_E_INDEX_OUT_OF_RANGE);
  levarray_check_free(check);
}
