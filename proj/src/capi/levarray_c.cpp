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

#include "levarray/levarray.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "levarray/entanglement.hpp"
#include "levarray/error.hpp"
#include "levarray/gaussian.hpp"
#include "levarray/optimizer.hpp"
#include "levarray/selfcheck.hpp"
#include "levarray/system.hpp"

using levarray::Error;
using levarray::ErrorCode;
namespace gaussian = levarray::gaussian;
namespace sys = levarray::system;
namespace ent = levarray::entanglement;
namespace opt = levarray::optimizer;

struct levarray_state {
  sys::Model model;
  std::optional<sys::BogoliubovSpec> spec;
  gaussian::CovarianceMatrix steady;
  gaussian::CovarianceMatrix mechanical;
  double abscissa;
};

struct levarray_sweep {
  std::vector<levarray_sweep_row> rows;
  std::vector<std::string> errors;
};

struct levarray_check {
  std::vector<levarray::CheckResult> results;
};

namespace {

thread_local std::string last_error;

levarray_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return LEVARRAY_E_INVALID_ARGUMENT;
    case ErrorCode::NotStable: return LEVARRAY_E_NOT_STABLE;
    case ErrorCode::SolveFailure: return LEVARRAY_E_SOLVE_FAILURE;
    case ErrorCode::NumericalFailure: return LEVARRAY_E_NUMERICAL_FAILURE;
    case ErrorCode::IndexOutOfRange: return LEVARRAY_E_INDEX_OUT_OF_RANGE;
    case ErrorCode::NotNormalized: return LEVARRAY_E_NOT_NORMALIZED;
    case ErrorCode::ShapeMismatch: return LEVARRAY_E_SHAPE_MISMATCH;
    case ErrorCode::ZeroVector: return LEVARRAY_E_ZERO_VECTOR;
    case ErrorCode::UnsortedInput: return LEVARRAY_E_UNSORTED_INPUT;
    case ErrorCode::AllUnstable: return LEVARRAY_E_ALL_UNSTABLE;
    case ErrorCode::DivisionByZero: return LEVARRAY_E_DIVISION_BY_ZERO;
    case ErrorCode::ConfigError: return LEVARRAY_E_CONFIG;
    case ErrorCode::IoError: return LEVARRAY_E_IO;
  }
  return LEVARRAY_E_INTERNAL;
}

levarray_status fail(levarray_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

struct BufferTooSmall {};

template <class Fn>
levarray_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return LEVARRAY_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const BufferTooSmall&) {
    return fail(LEVARRAY_E_BUFFER_TOO_SMALL, "output buffer too small");
  } catch (const std::bad_alloc&) {
    return fail(LEVARRAY_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LEVARRAY_E_INTERNAL, e.what());
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

sys::SystemParams to_params(const levarray_params* p) {
  require(p, "params");
  return sys::SystemParams::uniform(3, 3, p->kappa, p->gamma, p->nbar);
}

gaussian::Matrix read_matrix(const double* data, std::size_t dim) {
  require(data, "matrix");
  if (dim == 0) throw Error(ErrorCode::ShapeMismatch, "matrix dimension is zero");
  const auto d = static_cast<Eigen::Index>(dim);
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(data, d, d);
}

void write_matrix(const gaussian::Matrix& m, double* out) {
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(out, m.rows(), m.cols()) = m;
}

sys::BogoliubovSpec to_spec(const levarray_bogoliubov* b) {
  require(b, "spec");
  const std::array<double, 3> g{b->couplings[0], b->couplings[1], b->couplings[2]};
  switch (b->family) {
    case LEVARRAY_FAMILY_CYCLIC: return sys::BogoliubovSpec::from_lambda12(b->lambda1, b->lambda2, g);
    case LEVARRAY_FAMILY_TWO_PARTICLE: return sys::BogoliubovSpec::two_particle(b->lambda1, g);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown Bogoliubov family");
}

levarray_state* make_state(sys::Model model, std::optional<sys::BogoliubovSpec> spec) {
  const double abscissa = gaussian::spectral_abscissa(model.drift);
  auto steady = gaussian::lyapunov_solve(model.drift, model.diffusion);
  auto mech = sys::mechanical_block(steady, model.params);
  return new levarray_state{std::move(model), spec, std::move(steady), std::move(mech), abscissa};
}

void fill_merit(const ent::FiguresOfMerit& f, double merit[3], int gated[2]) {
  merit[0] = f.one;
  merit[1] = f.two;
  merit[2] = f.all;
  gated[0] = f.two_gated ? 1 : 0;
  gated[1] = f.one_gated ? 1 : 0;
}

void fill_report(const ent::EntanglementReport& r, levarray_report* out) {
  *out = levarray_report{};
  for (std::size_t i = 0; i < 3; ++i) {
    out->dyadic[i] = r.dyadic[i];
    out->triadic[i] = r.triadic[i];
  }
  fill_merit(r.dyadic_merit, out->dyadic_merit, out->dyadic_gated);
  fill_merit(r.triadic_merit, out->triadic_merit, out->triadic_gated);
  if (r.occupations) {
    out->has_occupations = 1;
    for (std::size_t i = 0; i < 3; ++i) out->occupations[i] = (*r.occupations)[i].occupation;
  }
  out->squeezed_count = r.squeezed.size();
}

opt::OptimizationProblem to_problem(const levarray_params* params, const levarray_problem* p) {
  require(p, "problem");
  opt::OptimizationProblem problem;
  if (p->arity != 2 && p->arity != 3) throw Error(ErrorCode::InvalidArgument, "arity must be 2 or 3");
  problem.objective = {p->arity == 2 ? ent::Arity::Dyadic : ent::Arity::Triadic, p->count};
  problem.objective.validate();
  problem.g_max = p->g_max;
  problem.family = p->family == LEVARRAY_FAMILY_TWO_PARTICLE ? sys::ModeFamily::TwoParticle : sys::ModeFamily::Cyclic;
  problem.lambda1 = p->lambda1;
  problem.lambda2 = p->lambda2;
  problem.params = to_params(params);
  problem.symmetry = p->symmetry == LEVARRAY_EQUAL_COUPLINGS ? opt::Symmetry::EqualCouplings : opt::Symmetry::Free;
  problem.refinement = {p->seeds_per_axis, p->refine_starts, p->max_iterations, p->spread_tolerance};
  return problem;
}

void fill_optimum(const opt::OptimizationResult& r, levarray_optimum* out) {
  *out = levarray_optimum{};
  out->value = r.value;
  std::copy(r.couplings.begin(), r.couplings.end(), out->couplings);
  out->stable = r.optimum.stable ? 1 : 0;
  out->spectral_abscissa = r.optimum.spectral_abscissa;
  out->evaluations = r.diagnostics.evaluations;
  if (r.optimum.report) fill_report(*r.optimum.report, &out->report);
}

}  // namespace

extern "C" {

const char* levarray_status_string(levarray_status status) {
  switch (status) {
    case LEVARRAY_OK: return "ok";
    case LEVARRAY_E_INVALID_ARGUMENT: return "invalid argument";
    case LEVARRAY_E_NOT_STABLE: return "drift not stable";
    case LEVARRAY_E_SOLVE_FAILURE: return "linear solve failed";
    case LEVARRAY_E_NUMERICAL_FAILURE: return "eigen-decomposition failed";
    case LEVARRAY_E_INDEX_OUT_OF_RANGE: return "index out of range";
    case LEVARRAY_E_NOT_NORMALIZED: return "Bogoliubov coefficients not normalized";
    case LEVARRAY_E_SHAPE_MISMATCH: return "shape mismatch";
    case LEVARRAY_E_ZERO_VECTOR: return "zero coefficient vector";
    case LEVARRAY_E_UNSORTED_INPUT: return "input not sorted";
    case LEVARRAY_E_ALL_UNSTABLE: return "every evaluated point unstable";
    case LEVARRAY_E_DIVISION_BY_ZERO: return "division by zero";
    case LEVARRAY_E_CONFIG: return "configuration error";
    case LEVARRAY_E_IO: return "i/o error";
    case LEVARRAY_E_BUFFER_TOO_SMALL: return "output buffer too small";
    case LEVARRAY_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* levarray_last_error(void) { return last_error.c_str(); }

const char* levarray_version(void) { return "0.1.0"; }

levarray_status levarray_params_reference(levarray_params* out) {
  return guarded([&] {
    require(out, "out");
    *out = {0.4, 1.0 / 5e9, 2e7};
  });
}

levarray_status levarray_lyapunov_solve(const double* drift, const double* diffusion, size_t dim, double* out) {
  return guarded([&] {
    require(out, "out");
    write_matrix(gaussian::lyapunov_solve(read_matrix(drift, dim), read_matrix(diffusion, dim)).matrix(), out);
  });
}

levarray_status levarray_symplectic_eigenvalues(const double* cov, size_t dim, double* out) {
  return guarded([&] {
    require(out, "out");
    const auto nu = gaussian::symplectic_eigenvalues(gaussian::CovarianceMatrix(read_matrix(cov, dim)));
    std::copy(nu.begin(), nu.end(), out);
  });
}

levarray_status levarray_log_negativity(const double* cov, size_t dim, const size_t* party_a, size_t n_a,
                                        const size_t* party_b, size_t n_b, double* out) {
  return guarded([&] {
    require(out, "out");
    if (n_a > 0) require(party_a, "party_a");
    if (n_b > 0) require(party_b, "party_b");
    gaussian::Bipartition split{{party_a, party_a + n_a}, {party_b, party_b + n_b}};
    *out = gaussian::log_negativity(gaussian::CovarianceMatrix(read_matrix(cov, dim)), split);
  });
}

levarray_status levarray_state_create(const levarray_params* params, const levarray_bogoliubov* spec,
                                      levarray_state** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    const auto s = to_spec(spec);
    *out = make_state(sys::build_model(to_params(params), s), s);
  });
}

levarray_status levarray_state_create_couplings(const levarray_params* params, const double* g_minus,
                                                const double* g_plus, levarray_state** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    sys::CouplingMatrix c{read_matrix(g_minus, 3), read_matrix(g_plus, 3)};
    if (!c.exclusive()) {
      throw Error(ErrorCode::InvalidArgument, "a particle-cavity pair carries both g_minus and g_plus");
    }
    *out = make_state(sys::build_model(to_params(params), c), std::nullopt);
  });
}

void levarray_state_free(levarray_state* state) { delete state; }

levarray_status levarray_state_covariance(const levarray_state* state, double* out, size_t capacity) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    const auto& m = state->steady.matrix();
    if (capacity < static_cast<size_t>(m.size())) {
      throw BufferTooSmall{};
    }
    write_matrix(m, out);
  });
}

levarray_status levarray_state_spectral_abscissa(const levarray_state* state, double* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = state->abscissa;
  });
}

levarray_status levarray_state_report(const levarray_state* state, levarray_report* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    fill_report(ent::analyze(state->mechanical, state->spec), out);
  });
}

size_t levarray_catalog_size(void) { return ent::squeezing_catalog().size(); }

const char* levarray_catalog_label(size_t index) {
  const auto& catalog = ent::squeezing_catalog();
  return index < catalog.size() ? catalog[index].label.c_str() : nullptr;
}

levarray_status levarray_state_catalog_variance(const levarray_state* state, size_t index, double* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    const auto& catalog = ent::squeezing_catalog();
    if (index >= catalog.size()) throw Error(ErrorCode::IndexOutOfRange, "catalog index out of range");
    *out = gaussian::quadrature_variance(state->mechanical, catalog[index].coefficients).variance;
  });
}

levarray_status levarray_state_min_variance(const levarray_state* state, const size_t* particles, size_t count,
                                            double* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    if (count > 0) require(particles, "particles");
    *out = gaussian::min_variance_quadrature(state->mechanical, {particles, particles + count}).variance;
  });
}

levarray_status levarray_problem_default(levarray_problem* out) {
  return guarded([&] {
    require(out, "out");
    const opt::RefinementSettings r;
    *out = {2, 3, 0.4, LEVARRAY_FAMILY_CYCLIC, 0.0, 1.0, LEVARRAY_FREE,
            r.seeds_per_axis, r.refine_starts, r.max_iterations, r.spread_tolerance};
  });
}

levarray_status levarray_optimize(const levarray_params* params, const levarray_problem* problem,
                                  levarray_optimum* out) {
  return guarded([&] {
    require(out, "out");
    fill_optimum(opt::optimize_couplings(to_problem(params, problem)), out);
  });
}

levarray_status levarray_brute_force(const levarray_params* params, const levarray_problem* problem, double step,
                                     double* value, double couplings[3]) {
  return guarded([&] {
    require(value, "value");
    require(couplings, "couplings");
    const auto r = opt::brute_force_verify(to_problem(params, problem), step);
    *value = r.value;
    std::copy(r.couplings.begin(), r.couplings.end(), couplings);
  });
}

levarray_status levarray_sweep_run(const levarray_params* params, const levarray_problem* base,
                                   levarray_range lambda1, levarray_range lambda2, size_t workers,
                                   levarray_sweep** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    opt::SweepGrid grid{{lambda1.min, lambda1.max, lambda1.step},
                        {lambda2.min, lambda2.max, lambda2.step},
                        to_problem(params, base)};
    const auto rows = opt::sweep_lambda(grid, workers);
    auto sweep = std::make_unique<levarray_sweep>();
    for (const auto& row : rows) {
      levarray_sweep_row r{};
      r.lambda1 = row.lambda1;
      r.lambda2 = row.lambda2;
      r.lambda3 = row.lambda3;
      r.feasible = row.feasible ? 1 : 0;
      r.failed = row.feasible && !row.error.empty() ? 1 : 0;
      if (row.feasible && row.error.empty()) fill_optimum(row.result, &r.optimum);
      sweep->rows.push_back(r);
      sweep->errors.push_back(row.error);
    }
    *out = sweep.release();
  });
}

void levarray_sweep_free(levarray_sweep* sweep) { delete sweep; }

size_t levarray_sweep_size(const levarray_sweep* sweep) { return sweep ? sweep->rows.size() : 0; }

levarray_status levarray_sweep_row_at(const levarray_sweep* sweep, size_t index, levarray_sweep_row* out) {
  return guarded([&] {
    require(sweep, "sweep");
    require(out, "out");
    if (index >= sweep->rows.size()) throw Error(ErrorCode::IndexOutOfRange, "sweep row out of range");
    *out = sweep->rows[index];
  });
}

const char* levarray_sweep_row_error(const levarray_sweep* sweep, size_t index) {
  if (sweep == nullptr || index >= sweep->errors.size()) return "";
  return sweep->errors[index].c_str();
}

levarray_status levarray_check_run(unsigned long long seed, size_t trials, levarray_check** out) {
  return guarded([&] {
    require(out, "out");
    *out = new levarray_check{levarray::run_invariant_suite(seed, trials)};
  });
}

void levarray_check_free(levarray_check* check) { delete check; }

size_t levarray_check_size(const levarray_check* check) { return check ? check->results.size() : 0; }

levarray_status levarray_check_result(const levarray_check* check, size_t index, const char** name, int* passed,
                                      const char** detail) {
  return guarded([&] {
    require(check, "check");
    if (index >= check->results.size()) throw Error(ErrorCode::IndexOutOfRange, "check index out of range");
    const auto& r = check->results[index];
    if (name) *name = r.name.c_str();
    if (passed) *passed = r.passed ? 1 : 0;
    if (detail) *detail = r.detail.c_str();
  });
}

}  // extern "C"
