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


#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "api.hpp"

namespace levarray::runner {
namespace {

[[noreturn]] void config_error(const std::string& message) { throw Failure(LEVARRAY_E_CONFIG, message); }

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r'; };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
    throw std::invalid_argument("expected a finite number, got '" + std::string(text) + "'");
  }
  return value;
}

int to_int(std::string_view text) {
  text = trim(text);
  int value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

bool to_bool(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw std::invalid_argument("expected true or false, got '" + std::string(text) + "'");
}

std::vector<double> to_list(std::string_view text) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) return out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(to_double(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

using Setter = std::function<void(ScenarioConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"params.kappa", [](ScenarioConfig& c, std::string_view v) { c.params.kappa = to_double(v); }},
      {"params.gamma", [](ScenarioConfig& c, std::string_view v) { c.params.gamma = to_double(v); }},
      {"params.Q",
       [](ScenarioConfig& c, std::string_view v) {
         const double q = to_double(v);
         if (q <= 0.0) throw std::invalid_argument("Q must be positive");
         c.params.gamma = 1.0 / q;
       }},
      {"params.nbar", [](ScenarioConfig& c, std::string_view v) { c.params.nbar = to_double(v); }},
      {"objective.arity", [](ScenarioConfig& c, std::string_view v) { c.problem.arity = to_int(v); }},
      {"objective.count", [](ScenarioConfig& c, std::string_view v) { c.problem.count = to_int(v); }},
      {"bogoliubov.family",
       [](ScenarioConfig& c, std::string_view v) {
         v = trim(v);
         if (v == "cyclic") {
           c.problem.family = LEVARRAY_FAMILY_CYCLIC;
         } else if (v == "two_particle") {
           c.problem.family = LEVARRAY_FAMILY_TWO_PARTICLE;
         } else {
           throw std::invalid_argument("expected cyclic or two_particle");
         }
       }},
      {"optimizer.g_max", [](ScenarioConfig& c, std::string_view v) { c.problem.g_max = to_double(v); }},
      {"optimizer.symmetry",
       [](ScenarioConfig& c, std::string_view v) {
         v = trim(v);
         if (v == "free") {
           c.problem.symmetry = LEVARRAY_FREE;
         } else if (v == "equal") {
           c.problem.symmetry = LEVARRAY_EQUAL_COUPLINGS;
         } else {
           throw std::invalid_argument("expected free or equal");
         }
       }},
      {"optimizer.seeds_per_axis", [](ScenarioConfig& c, std::string_view v) { c.problem.seeds_per_axis = to_int(v); }},
      {"optimizer.refine_starts", [](ScenarioConfig& c, std::string_view v) { c.problem.refine_starts = to_int(v); }},
      {"optimizer.max_iterations", [](ScenarioConfig& c, std::string_view v) { c.problem.max_iterations = to_int(v); }},
      {"optimizer.spread_tolerance",
       [](ScenarioConfig& c, std::string_view v) { c.problem.spread_tolerance = to_double(v); }},
      {"grid.landscape", [](ScenarioConfig& c, std::string_view v) { c.landscape = to_bool(v); }},
      {"grid.lambda1.min", [](ScenarioConfig& c, std::string_view v) { c.grid.lambda1.min = to_double(v); }},
      {"grid.lambda1.max", [](ScenarioConfig& c, std::string_view v) { c.grid.lambda1.max = to_double(v); }},
      {"grid.lambda1.step", [](ScenarioConfig& c, std::string_view v) { c.grid.lambda1.step = to_double(v); }},
      {"grid.lambda2.min", [](ScenarioConfig& c, std::string_view v) { c.grid.lambda2.min = to_double(v); }},
      {"grid.lambda2.max", [](ScenarioConfig& c, std::string_view v) { c.grid.lambda2.max = to_double(v); }},
      {"grid.lambda2.step", [](ScenarioConfig& c, std::string_view v) { c.grid.lambda2.step = to_double(v); }},
      {"cuts.lambda2", [](ScenarioConfig& c, std::string_view v) { c.cut_lambda2 = to_list(v); }},
      {"cuts.lambda1.step", [](ScenarioConfig& c, std::string_view v) { c.cut_lambda1_step = to_double(v); }},
      {"cuts.nbar", [](ScenarioConfig& c, std::string_view v) { c.cut_nbar = to_list(v); }},
      {"output.dir", [](ScenarioConfig& c, std::string_view v) { c.output_dir = std::string(trim(v)); }},
      {"workers",
       [](ScenarioConfig& c, std::string_view v) {
         const int n = to_int(v);
         if (n < 1) throw std::invalid_argument("worker count must be at least 1");
         c.workers = static_cast<std::size_t>(n);
       }},
      {"oracle", [](ScenarioConfig& c, std::string_view v) { c.oracle = to_bool(v); }},
      {"oracle.step", [](ScenarioConfig& c, std::string_view v) { c.oracle_step = to_double(v); }},
  };
  return table;
}

void assign(ScenarioConfig& config, std::string_view key, std::string_view value, const std::string& where) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) config_error("unknown key '" + std::string(key) + "' at " + where);
  try {
    it->second(config, value);
  } catch (const std::invalid_argument& e) {
    config_error("bad value for '" + std::string(key) + "' at " + where + ": " + e.what());
  }
}

void apply_line(ScenarioConfig& config, std::string_view line, const std::string& where) {
  const auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  line = trim(line);
  if (line.empty()) return;
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) config_error("expected key = value at " + where);
  const auto key = trim(line.substr(0, eq));
  if (key.empty()) config_error("missing key at " + where);
  assign(config, key, line.substr(eq + 1), where);
}

void apply_preset(ScenarioConfig& c) {
  if (const auto p = preset(c.scenario)) {
    c.problem.arity = p->arity;
    c.problem.count = p->count;
    c.problem.symmetry = p->symmetry;
    c.cut_lambda2 = p->cuts;
  } else if (c.scenario == "fig4a" || c.scenario == "fig4b") {
    c.problem.arity = 3;
    c.problem.count = 3;
    c.problem.symmetry = c.scenario == "fig4a" ? LEVARRAY_EQUAL_COUPLINGS : LEVARRAY_FREE;
    c.problem.family = LEVARRAY_FAMILY_TWO_PARTICLE;
    c.cut_lambda2.clear();
    c.landscape = false;
    if (c.scenario == "fig4a") c.cut_nbar = {0.0};
  } else if (c.scenario == "table1") {
    c.landscape = false;
  }
}

void validate(const ScenarioConfig& c) {
  const auto require = [](bool ok, const std::string& message) {
    if (!ok) config_error(message);
  };
  require(c.params.kappa > 0.0, "params.kappa must be positive");
  require(c.params.gamma >= 0.0, "params.gamma must be non-negative");
  require(c.params.nbar >= 0.0, "params.nbar must be non-negative");
  require(c.problem.arity == 2 || c.problem.arity == 3, "objective.arity must be 2 or 3");
  require(c.problem.count >= 1 && c.problem.count <= 3, "objective.count must be 1, 2 or 3");
  require(c.problem.g_max >= 0.0, "optimizer.g_max must be non-negative");
  require(c.problem.seeds_per_axis >= 2, "optimizer.seeds_per_axis must be at least 2");
  require(c.problem.refine_starts >= 1, "optimizer.refine_starts must be at least 1");
  require(c.problem.max_iterations >= 1, "optimizer.max_iterations must be at least 1");
  require(c.problem.spread_tolerance > 0.0, "optimizer.spread_tolerance must be positive");
  for (const auto* r : {&c.grid.lambda1, &c.grid.lambda2}) {
    require(r->step > 0.0 && r->max >= r->min, "grid ranges need step > 0 and max >= min");
  }
  require(c.grid.lambda1.min >= 0.0 && c.grid.lambda2.min >= 0.0, "lambda ranges must be non-negative");
  require(c.cut_lambda1_step > 0.0, "cuts.lambda1.step must be positive");
  for (double n : c.cut_nbar) require(n >= 0.0, "cuts.nbar values must be non-negative");
  require(c.oracle_step > 0.0, "oracle.step must be positive");
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> list = {
      {"fig2a", 2, 3, LEVARRAY_EQUAL_COUPLINGS, {0.8}},
      {"fig2b", 2, 2, LEVARRAY_FREE, {0.23}},
      {"fig2c", 2, 1, LEVARRAY_FREE, {0.01}},
      {"fig3a", 3, 3, LEVARRAY_EQUAL_COUPLINGS, {0.91, 0.92}},
      {"fig3b", 3, 2, LEVARRAY_FREE, {0.53}},
      {"fig3c", 3, 1, LEVARRAY_FREE, {1.01}},
  };
  return list;
}

std::optional<Preset> preset(std::string_view id) {
  for (const auto& p : presets()) {
    if (p.id == id) return p;
  }
  return std::nullopt;
}

const std::vector<ScenarioInfo>& scenarios() {
  static const std::vector<ScenarioInfo> list = {
      {"fig2a", "dyadic entanglement in all pairs, equal couplings, cut at lambda2=0.8"},
      {"fig2b", "dyadic entanglement in two pairs, free couplings, cut at lambda2=0.23"},
      {"fig2c", "dyadic entanglement in one pair, free couplings, cut at lambda2=0.01"},
      {"fig3a", "triadic entanglement in all splits, equal couplings, cuts at lambda2=0.91,0.92"},
      {"fig3b", "triadic entanglement in two splits, free couplings, cut at lambda2=0.53"},
      {"fig3c", "triadic entanglement in one split, free couplings, cut at lambda2=1.01"},
      {"fig4a", "two-particle Bogoliubov modes, equal couplings, nbar and nbar=0"},
      {"fig4b", "two-particle Bogoliubov modes, free couplings"},
      {"table1", "squeezed collective quadratures at the six entanglement maxima"},
      {"custom", "everything from the configuration"},
  };
  return list;
}

bool is_scenario(std::string_view id) {
  const auto& list = scenarios();
  return std::any_of(list.begin(), list.end(), [&](const ScenarioInfo& s) { return s.id == id; });
}

ScenarioConfig parse_config_text(std::string_view scenario, std::string_view text, std::string_view origin,
                                 const std::vector<std::string>& overrides) {
  if (!is_scenario(scenario)) config_error("unknown scenario '" + std::string(scenario) + "'");
  ScenarioConfig config;
  config.scenario = std::string(scenario);
  check(levarray_params_reference(&config.params), "reference parameters");
  check(levarray_problem_default(&config.problem), "default problem");
  config.workers = std::max(1u, std::thread::hardware_concurrency());
  apply_preset(config);

  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    apply_line(config, line, std::string(origin) + ":" + std::to_string(number));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  for (std::size_t i = 0; i < overrides.size(); ++i) {
    const auto& o = overrides[i];
    if (o.find('=') == std::string::npos) config_error("override '" + o + "' is not key=value");
    apply_line(config, o, "override " + std::to_string(i + 1));
  }

  if (config.output_dir.empty()) {
    const char* root = std::getenv("LEVARRAY_OUT");
    const std::filesystem::path base = root != nullptr && *root != '\0' ? root : "levarray_out";
    config.output_dir = (base / config.scenario).string();
  }
  validate(config);
  return config;
}

ScenarioConfig parse_config(std::string_view scenario, const std::optional<std::string>& path,
                            const std::vector<std::string>& overrides) {
  std::string text;
  std::string origin = "<none>";
  if (path) {
    std::ifstream in(*path);
    if (!in) config_error("cannot read configuration file '" + *path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
    origin = *path;
  }
  return parse_config_text(scenario, text, origin, overrides);
}

}  // namespace levarray::runner
