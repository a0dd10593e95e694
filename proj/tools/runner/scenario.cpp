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


#include "scenario.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <tuple>

#include "api.hpp"
#include "csv.hpp"

namespace levarray::runner {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kOracleSlack = 1e-6;

struct Record {
  std::string source;
  std::string scope;
  levarray_problem problem;
  double nbar;
  levarray_sweep_row row;
  std::string error;

  bool ok() const { return row.feasible && !row.failed; }
  const levarray_report& report() const { return row.optimum.report; }
};

std::vector<Record> sweep(const ScenarioConfig& config, const levarray_problem& problem, double nbar,
                          levarray_range l1, levarray_range l2, const std::string& source, const std::string& scope,
                          std::ostream& log) {
  levarray_params params = config.params;
  params.nbar = nbar;
  const auto start = std::chrono::steady_clock::now();
  levarray_sweep* raw = nullptr;
  check(levarray_sweep_run(&params, &problem, l1, l2, config.workers, &raw), "sweep");
  SweepHandle handle(raw);
  std::vector<Record> records;
  const std::size_t n = levarray_sweep_size(handle.get());
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Record r{source, scope, problem, nbar, {}, levarray_sweep_row_error(handle.get(), i)};
    check(levarray_sweep_row_at(handle.get(), i, &r.row), "sweep row");
    if (r.row.failed) {
      log << "  " << source << " " << scope << ": point (" << r.row.lambda1 << ", " << r.row.lambda2
          << ") failed: " << r.error << "\n";
    }
    records.push_back(std::move(r));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  log << "  " << source << " " << scope << " nbar=" << format_number(nbar) << ": " << n << " points in "
      << format_number(std::round(seconds * 100) / 100) << " s\n";
  return records;
}

std::vector<std::string> point_header() {
  return {"lambda1",      "lambda2",      "lambda3",      "G1",        "G2",          "G3",
          "E_pair_12",    "E_pair_23",    "E_pair_31",    "E_split_1_23", "E_split_2_31", "E_split_3_12",
          "fom_E1",       "fom_E2",       "fom_E3",       "stable",    "n_eff_1",     "n_eff_2",
          "n_eff_3",      "feasible",     "failed",       "value",     "spectral_abscissa", "arity",
          "count",        "nbar",         "source"};
}

std::vector<Cell> point_cells(const Record& r) {
  const auto& row = r.row;
  const auto& opt = row.optimum;
  const auto& rep = opt.report;
  const bool ok = r.ok();
  const auto num = [ok](double v) -> Cell { return ok ? v : kNaN; };
  const double* merit = r.problem.arity == 2 ? rep.dyadic_merit : rep.triadic_merit;
  std::vector<Cell> cells = {row.lambda1, row.lambda2, row.feasible ? row.lambda3 : kNaN};
  for (double g : opt.couplings) cells.push_back(num(g));
  for (double e : rep.dyadic) cells.push_back(num(e));
  for (double e : rep.triadic) cells.push_back(num(e));
  for (int i = 0; i < 3; ++i) cells.push_back(num(merit[i]));
  cells.push_back(static_cast<long long>(ok && opt.stable));
  for (double n : rep.occupations) cells.push_back(ok && rep.has_occupations ? n : kNaN);
  cells.push_back(static_cast<long long>(row.feasible));
  cells.push_back(static_cast<long long>(row.failed));
  cells.push_back(num(opt.value));
  cells.push_back(num(opt.spectral_abscissa));
  cells.push_back(static_cast<long long>(r.problem.arity));
  cells.push_back(static_cast<long long>(r.problem.count));
  cells.push_back(r.nbar);
  cells.push_back(r.source);
  return cells;
}

void sort_points(std::vector<Record>& records) {
  std::stable_sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
    if (a.row.lambda1 != b.row.lambda1) return a.row.lambda1 < b.row.lambda1;
    return a.row.lambda2 < b.row.lambda2;
  });
}

void write_points(const std::string& path, const std::vector<Record>& records) {
  CsvWriter out(path, point_header());
  for (const auto& r : records) out.row(point_cells(r));
  out.close();
}

double weakest_split(const levarray_report& r) { return *std::min_element(r.triadic, r.triadic + 3); }

struct Maximum {
  const Record* record;
  std::string statistic;
  double value;
  double oracle_value = kNaN;
  int oracle_ok = -1;
};

// Groups are keyed by (source, scope, nbar) in first-seen order.
std::vector<std::vector<const Record*>> group(const std::vector<Record>& records) {
  std::vector<std::vector<const Record*>> groups;
  std::map<std::tuple<std::string, std::string, double>, std::size_t> index;
  for (const auto& r : records) {
    const auto key = std::make_tuple(r.source, r.scope, r.nbar);
    auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(&r);
  }
  return groups;
}

std::vector<Maximum> locate_maxima(const std::vector<Record>& records, std::ostream& log) {
  std::vector<Maximum> out;
  for (const auto& members : group(records)) {
    const Record* best = nullptr;
    const Record* weakest = nullptr;
    for (const Record* r : members) {
      if (!r->ok()) continue;
      if (best == nullptr || r->row.optimum.value > best->row.optimum.value) best = r;
      if (weakest == nullptr || weakest_split(r->report()) > weakest_split(weakest->report())) weakest = r;
    }
    if (best == nullptr) {
      log << "  " << members.front()->source << " " << members.front()->scope << ": no successful point\n";
      continue;
    }
    double edge = -INFINITY;
    for (const Record* r : members) edge = std::max(edge, r->row.lambda1);
    if (members.size() > 1 && best->row.lambda1 >= edge) {
      log << "  warning: " << best->source << " " << best->scope << ": maximum at the upper lambda1 edge ("
          << best->row.lambda1 << "); consider widening the range\n";
    }
    out.push_back({best, "max_objective", best->row.optimum.value});
    if (best->problem.arity == 3) out.push_back({weakest, "max_weakest_split", weakest_split(weakest->report())});
  }
  return out;
}

void run_oracle(const ScenarioConfig& config, Maximum& m, std::ostream& log) {
  levarray_params params = config.params;
  params.nbar = m.record->nbar;
  levarray_problem problem = m.record->problem;
  problem.lambda1 = m.record->row.lambda1;
  problem.lambda2 = m.record->row.lambda2;
  double couplings[3];
  check(levarray_brute_force(&params, &problem, config.oracle_step, &m.oracle_value, couplings), "lattice oracle");
  m.oracle_ok = m.value >= m.oracle_value - kOracleSlack ? 1 : 0;
  log << "  oracle " << m.record->source << " " << m.record->scope << ": optimizer " << format_number(m.value)
      << ", lattice " << format_number(m.oracle_value) << (m.oracle_ok ? "" : "  (optimizer below lattice)") << "\n";
}

void write_summary(const std::string& path, const std::vector<Maximum>& maxima) {
  CsvWriter out(path, {"source",         "scope",          "statistic",      "objective",      "nbar",
                       "lambda1",        "lambda2",        "lambda3",        "G1",             "G2",
                       "G3",             "value",          "E_pair_12",      "E_pair_23",      "E_pair_31",
                       "E_split_1_23",   "E_split_2_31",   "E_split_3_12",   "dyadic_fom_E1",  "dyadic_fom_E2",
                       "dyadic_fom_E3",  "triadic_fom_E1", "triadic_fom_E2", "triadic_fom_E3", "stable",
                       "oracle_value",   "oracle_ok"});
  for (const auto& m : maxima) {
    const Record& r = *m.record;
    const auto& rep = r.report();
    std::vector<Cell> cells = {r.source, r.scope, m.statistic, objective_name(r.problem.arity, r.problem.count),
                               r.nbar, r.row.lambda1, r.row.lambda2, r.row.lambda3};
    for (double g : r.row.optimum.couplings) cells.push_back(g);
    cells.push_back(m.value);
    for (double e : rep.dyadic) cells.push_back(e);
    for (double e : rep.triadic) cells.push_back(e);
    for (double e : rep.dyadic_merit) cells.push_back(e);
    for (double e : rep.triadic_merit) cells.push_back(e);
    cells.push_back(static_cast<long long>(r.row.optimum.stable));
    cells.push_back(m.oracle_value);
    cells.push_back(static_cast<long long>(m.oracle_ok));
    out.row(cells);
  }
  out.close();
}

void write_squeezing(const std::string& path, const ScenarioConfig& config, const std::vector<Maximum>& maxima) {
  CsvWriter out(path, {"source", "scope", "nbar", "lambda1", "lambda2", "lambda3", "G1", "G2", "G3", "quadrature",
                       "variance", "squeezed"});
  const std::size_t entries = levarray_catalog_size();
  for (const auto& m : maxima) {
    if (m.statistic != "max_objective") continue;
    const Record& r = *m.record;
    levarray_params params = config.params;
    params.nbar = r.nbar;
    levarray_bogoliubov spec{r.problem.family, r.row.lambda1, r.row.lambda2, {}};
    std::copy(std::begin(r.row.optimum.couplings), std::end(r.row.optimum.couplings), spec.couplings);
    levarray_state* raw = nullptr;
    check(levarray_state_create(&params, &spec, &raw), "steady state at maximum");
    StateHandle state(raw);
    const auto emit = [&](const std::string& label, double variance) {
      std::vector<Cell> cells = {r.source, r.scope, r.nbar, r.row.lambda1, r.row.lambda2, r.row.lambda3};
      for (double g : r.row.optimum.couplings) cells.push_back(g);
      cells.push_back(label);
      cells.push_back(variance);
      cells.push_back(static_cast<long long>(variance < 1.0));
      out.row(cells);
    };
    for (std::size_t i = 0; i < entries; ++i) {
      double variance = 0.0;
      check(levarray_state_catalog_variance(state.get(), i, &variance), "catalog variance");
      emit(levarray_catalog_label(i), variance);
    }
    const size_t all[3] = {0, 1, 2};
    double minimum = 0.0;
    check(levarray_state_min_variance(state.get(), all, 3, &minimum), "minimum variance");
    emit("min_over_all", minimum);
  }
  out.close();
}

std::string cut_scope(double lambda2) { return "cut_lambda2=" + format_number(lambda2); }

std::vector<double> nbar_values(const ScenarioConfig& config) {
  std::vector<double> values = {config.params.nbar};
  for (double n : config.cut_nbar) {
    if (std::find(values.begin(), values.end(), n) == values.end()) values.push_back(n);
  }
  return values;
}

std::vector<Record> run_cuts(const ScenarioConfig& config, const std::string& source, std::ostream& log) {
  std::vector<Record> records;
  const levarray_range l1{config.grid.lambda1.min, config.grid.lambda1.max, config.cut_lambda1_step};
  for (double nbar : nbar_values(config)) {
    if (config.problem.family == LEVARRAY_FAMILY_TWO_PARTICLE) {
      auto part = sweep(config, config.problem, nbar, l1, {1.0, 1.0, 1.0}, source, "cut_lambda1", log);
      records.insert(records.end(), part.begin(), part.end());
      continue;
    }
    for (double l2 : config.cut_lambda2) {
      auto part = sweep(config, config.problem, nbar, l1, {l2, l2, 1.0}, source, cut_scope(l2), log);
      records.insert(records.end(), part.begin(), part.end());
    }
  }
  return records;
}

}  // namespace

std::string objective_name(int arity, int count) {
  return "E" + std::to_string(count) + "^(" + std::to_string(arity) + ")";
}

RunOutput run_scenario(const ScenarioConfig& config, std::ostream& log) {
  RunOutput output;
  log << "scenario " << config.scenario << ": " << objective_name(config.problem.arity, config.problem.count)
      << ", kappa=" << format_number(config.params.kappa) << ", gamma=" << format_number(config.params.gamma)
      << ", nbar=" << format_number(config.params.nbar) << ", g_max=" << format_number(config.problem.g_max)
      << ", workers=" << config.workers << "\n";

  std::vector<Record> landscape;
  std::vector<Record> cuts;
  if (config.scenario == "table1") {
    for (const auto& p : presets()) {
      ScenarioConfig sub = config;
      sub.problem.arity = p.arity;
      sub.problem.count = p.count;
      sub.problem.symmetry = p.symmetry;
      sub.problem.family = LEVARRAY_FAMILY_CYCLIC;
      sub.cut_lambda2 = p.cuts;
      sub.cut_nbar.clear();
      auto part = run_cuts(sub, std::string(p.id), log);
      cuts.insert(cuts.end(), part.begin(), part.end());
    }
  } else {
    if (config.landscape) {
      landscape = sweep(config, config.problem, config.params.nbar, config.grid.lambda1, config.grid.lambda2,
                        config.scenario, "landscape", log);
    }
    cuts = run_cuts(config, config.scenario, log);
  }
  sort_points(landscape);
  sort_points(cuts);

  std::vector<Maximum> maxima = locate_maxima(landscape, log);
  const auto cut_maxima = locate_maxima(cuts, log);
  maxima.insert(maxima.end(), cut_maxima.begin(), cut_maxima.end());
  if (config.oracle) {
    for (auto& m : maxima) {
      if (m.statistic == "max_objective") run_oracle(config, m, log);
    }
  }
  for (const auto* records : {&landscape, &cuts}) {
    for (const auto& r : *records) {
      output.points += r.row.feasible ? 1 : 0;
      output.failed += r.row.failed ? 1 : 0;
    }
  }

  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw Failure(LEVARRAY_E_IO, "cannot create '" + config.output_dir + "': " + ec.message());
  const auto path = [&](const char* name) { return (std::filesystem::path(config.output_dir) / name).string(); };
  if (config.landscape && config.scenario != "table1") {
    output.files.push_back(path("landscape.csv"));
    write_points(output.files.back(), landscape);
  }
  if (!cuts.empty()) {
    output.files.push_back(path("cuts.csv"));
    write_points(output.files.back(), cuts);
  }
  output.files.push_back(path("summary.csv"));
  write_summary(output.files.back(), maxima);
  output.files.push_back(path("squeezing.csv"));
  write_squeezing(output.files.back(), config, maxima);

  for (const auto& m : maxima) {
    const Record& r = *m.record;
    log << "  " << r.source << " " << r.scope << " " << m.statistic << " = " << format_number(m.value)
        << " at lambda=(" << format_number(r.row.lambda1) << ", " << format_number(r.row.lambda2) << "), G=("
        << format_number(r.row.optimum.couplings[0]) << ", " << format_number(r.row.optimum.couplings[1]) << ", "
        << format_number(r.row.optimum.couplings[2]) << ")\n";
  }
  return output;
}

}  // namespace levarray::runner
