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

// Dyadic (pairwise, third particle traced out) and triadic (1|2 split of the
// full three-particle state) entanglement of the mechanical steady state.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "levarray/gaussian.hpp"
#include "levarray/system.hpp"

namespace levarray::entanglement {

using gaussian::CovarianceMatrix;

/// Gate thresholds for "one value much larger than the next".
inline constexpr double kGateAbsolute = 1e-3;
inline constexpr double kGateRatio = 0.05;
inline constexpr double kSqueezingThreshold = 1.0 - 1e-6;

enum class Arity { Dyadic = 2, Triadic = 3 };

struct Labeled {
  std::string_view label;
  double value = 0.0;
};

/// Index 0, 1, 2 = pairs 12, 23, 31 (particle 3, 1, 2 traced out).
using DyadicSet = std::array<double, 3>;
/// Index 0, 1, 2 = splits 1|23, 2|31, 3|12.
using TriadicSet = std::array<double, 3>;

std::string_view dyadic_label(std::size_t index);
std::string_view triadic_label(std::size_t index);

DyadicSet dyadic_negativities(const CovarianceMatrix& mechanical);
TriadicSet triadic_negativities(const CovarianceMatrix& mechanical);

/// Descending, ties broken by label order.
std::array<Labeled, 3> sorted_descending(const std::array<double, 3>& values, Arity arity);

struct FiguresOfMerit {
  double all = 0.0;   ///< (E1 E2 E3)^(1/3)
  double two = 0.0;   ///< sqrt(E1 E2) when E3 is negligible, else 0
  double one = 0.0;   ///< E1 when E2 is negligible, else 0
  bool two_gated = false;  ///< true when the gate zeroed `two`
  bool one_gated = false;  ///< true when the gate zeroed `one`

  /// count = 3, 2 or 1.
  double by_count(int count) const;
};

/// Expects E1 >= E2 >= E3 >= 0; throws UnsortedInput otherwise.
FiguresOfMerit figures_of_merit(double e1, double e2, double e3);
FiguresOfMerit figures_of_merit(const std::array<double, 3>& unsorted, Arity arity);

struct CatalogEntry {
  std::string label;
  gaussian::Vector coefficients;  ///< over (x1, p1, x2, p2, x3, p3), unit norm
};

/// Fixed set of two- and three-particle collective quadratures: all sign
/// patterns of (x_i +- x_j), (p_i +- p_j), (+-x1 +-x2 +-x3), (+-p1 +-p2 +-p3)
/// and the mixed forms x_i +- p_j +- p_k, p_i +- x_j +- x_k, one
/// representative per overall sign.
const std::vector<CatalogEntry>& squeezing_catalog();

/// Catalog entry by label; nullptr when unknown.
const CatalogEntry* find_catalog_entry(std::string_view label);

struct SqueezedQuadrature {
  std::string label;
  gaussian::Vector coefficients;
  double variance = 0.0;
};

/// Every catalog quadrature with variance < 1 - 1e-6.
std::vector<SqueezedQuadrature> squeezing_scan(const CovarianceMatrix& mechanical,
                                               const std::vector<CatalogEntry>& catalog = squeezing_catalog());

struct ModeOccupation {
  double occupation = 0.0;
  bool ground_state = false;  ///< occupation < 1
};

/// <beta_k^dag beta_k> for the three cyclic Bogoliubov modes.
std::array<ModeOccupation, 3> collective_mode_occupations(const CovarianceMatrix& mechanical,
                                                          const system::BogoliubovSpec& spec);

struct EntanglementReport {
  DyadicSet dyadic{};
  TriadicSet triadic{};
  std::array<Labeled, 3> dyadic_sorted{};
  std::array<Labeled, 3> triadic_sorted{};
  FiguresOfMerit dyadic_merit;
  FiguresOfMerit triadic_merit;
  std::vector<SqueezedQuadrature> squeezed;
  std::optional<std::array<ModeOccupation, 3>> occupations;

  const FiguresOfMerit& merit(Arity arity) const { return arity == Arity::Dyadic ? dyadic_merit : triadic_merit; }
};

EntanglementReport analyze(const CovarianceMatrix& mechanical,
                           const std::optional<system::BogoliubovSpec>& spec = std::nullopt);

}  // namespace levarray::entanglement
