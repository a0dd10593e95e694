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

#include "levarray/nelder_mead.hpp"

#include <algorithm>
#include <numeric>

#include "levarray/error.hpp"

namespace levarray::optim {
namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Vertex {
  std::vector<double> x;
  double f = 0.0;
};

}  // namespace

NelderMeadResult nelder_mead_minimize(const Objective& f, std::vector<double> start, const Box& box,
                                      const NelderMeadSettings& settings) {
  const std::size_t n = start.size();
  if (n == 0 || box.lower.size() != n || box.upper.size() != n) {
    throw Error(ErrorCode::ShapeMismatch, "start point and bounds must have the same positive dimension");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (box.lower[i] > box.upper[i]) throw Error(ErrorCode::InvalidArgument, "box lower bound above upper bound");
  }

  NelderMeadResult result;
  auto project = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], box.lower[i], box.upper[i]);
  };
  auto eval = [&](std::vector<double> x) {
    project(x);
    ++result.evaluations;
    const double value = f(x);
    return Vertex{std::move(x), value};
  };

  std::vector<Vertex> simplex;
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  auto reset = [&](Vertex anchor) {
    simplex.clear();
    simplex.push_back(std::move(anchor));
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> x = simplex.front().x;
      const double up = x[i] + settings.initial_step;
      x[i] = up <= box.upper[i] ? up : x[i] - settings.initial_step;
      simplex.push_back(eval(std::move(x)));
    }
  };
  reset(eval(start));

  // Projection can flatten the simplex onto a face of the box; after each
  // convergence restart from the best vertex until a restart stops improving.
  double settled = 0.0;
  bool restarted = false;
  for (; result.iterations < settings.max_iterations; ++result.iterations) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    if (simplex.back().f - simplex.front().f < settings.spread_tolerance) {
      if (restarted && settled - simplex.front().f < settings.spread_tolerance) {
        result.converged = true;
        break;
      }
      settled = simplex.front().f;
      restarted = true;
      reset(simplex.front());
      continue;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(n);
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = centroid[i] + t * (simplex.back().x[i] - centroid[i]);
      return x;
    };

    Vertex reflected = eval(along(-kReflect));
    if (reflected.f < simplex.front().f) {
      Vertex expanded = eval(along(-kExpand));
      simplex.back() = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
      continue;
    }
    if (reflected.f < simplex[n - 1].f) {
      simplex.back() = std::move(reflected);
      continue;
    }
    const bool outside = reflected.f < simplex.back().f;
    Vertex contracted = eval(along(outside ? -kContract : kContract));
    if (contracted.f < std::min(reflected.f, simplex.back().f)) {
      simplex.back() = std::move(contracted);
      continue;
    }
    for (std::size_t v = 1; v <= n; ++v) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = simplex.front().x[i] + kShrink * (simplex[v].x[i] - simplex.front().x[i]);
      simplex[v] = eval(std::move(x));
    }
  }

  const auto best = std::min_element(simplex.begin(), simplex.end(), by_value);
  result.point = best->x;
  result.value = best->f;
  return result;
}

}  // namespace levarray::optim
