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

#include "levarray/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "levarray/error.hpp"

namespace levarray::entanglement {
namespace {

using gaussian::Bipartition;
using gaussian::Vector;

constexpr std::array<std::string_view, 3> kDyadicLabels{"pair_12", "pair_23", "pair_31"};
constexpr std::array<std::string_view, 3> kTriadicLabels{"split_1_23", "split_2_31", "split_3_12"};

struct Term {
  char quadrature;  // 'x' or 'p'
  int particle;     // 1-based
  int sign;
};

CatalogEntry make_entry(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.particle < b.particle; });
  std::ostringstream label;
  label << "(";
  Vector c = Vector::Zero(6);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Term& t = terms[i];
    if (t.sign < 0) label << "-";
    else if (i > 0) label << "+";
    label << t.quadrature << t.particle;
    c(2 * (t.particle - 1) + (t.quadrature == 'p' ? 1 : 0)) = t.sign;
  }
  label << ")/sqrt" << terms.size();
  return {label.str(), c / c.norm()};
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;
  constexpr std::array<std::array<int, 2>, 3> pairs{{{1, 2}, {2, 3}, {1, 3}}};
  for (char q : {'x', 'p'}) {
    for (const auto& pr : pairs) {
      out.push_back(make_entry({{q, pr[0], 1}, {q, pr[1], 1}}));
      out.push_back(make_entry({{q, pr[0], 1}, {q, pr[1], -1}}));
    }
  }
  // At most one minus sign covers every pattern up to an overall sign.
  for (char q : {'x', 'p'}) {
    out.push_back(make_entry({{q, 1, 1}, {q, 2, 1}, {q, 3, 1}}));
    for (int flipped = 1; flipped <= 3; ++flipped) {
      out.push_back(make_entry({{q, 1, flipped == 1 ? -1 : 1}, {q, 2, flipped == 2 ? -1 : 1}, {q, 3, flipped == 3 ? -1 : 1}}));
    }
  }
  for (char lead : {'x', 'p'}) {
    const char other = lead == 'x' ? 'p' : 'x';
    for (int i = 1; i <= 3; ++i) {
      const int j = i == 1 ? 2 : 1;
      const int k = i == 3 ? 2 : 3;
      for (int sj : {1, -1})
        for (int sk : {1, -1}) out.push_back(make_entry({{lead, i, 1}, {other, j, sj}, {other, k, sk}}));
    }
  }
  return out;
}

void require_three_particles(const CovarianceMatrix& v) {
  if (v.modes() != 3) throw Error(ErrorCode::ShapeMismatch, "expected the 6x6 mechanical block of three particles");
}

}  // namespace

std::string_view dyadic_label(std::size_t index) { return kDyadicLabels.at(index); }
std::string_view triadic_label(std::size_t index) { return kTriadicLabels.at(index); }

DyadicSet dyadic_negativities(const CovarianceMatrix& mechanical) {
  require_three_particles(mechanical);
  DyadicSet out{};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % 3;
    out[i] = gaussian::log_negativity(gaussian::reduce(mechanical, {std::min(i, j), std::max(i, j)}),
                                      Bipartition{{0}, {1}});
  }
  return out;
}

TriadicSet triadic_negativities(const CovarianceMatrix& mechanical) {
  require_three_particles(mechanical);
  TriadicSet out{};
  for (std::size_t i = 0; i < 3; ++i) {
    out[i] = gaussian::log_negativity(mechanical, Bipartition{{i}, {(i + 1) % 3, (i + 2) % 3}});
  }
  return out;
}

std::array<Labeled, 3> sorted_descending(const std::array<double, 3>& values, Arity arity) {
  const auto& labels = arity == Arity::Dyadic ? kDyadicLabels : kTriadicLabels;
  std::array<Labeled, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) out[i] = {labels[i], values[i]};
  std::stable_sort(out.begin(), out.end(), [](const Labeled& a, const Labeled& b) { return a.value > b.value; });
  return out;
}

double FiguresOfMerit::by_count(int count) const {
  switch (count) {
    case 3: return all;
    case 2: return two;
    case 1: return one;
    default: throw Error(ErrorCode::InvalidArgument, "figure-of-merit count must be 1, 2 or 3");
  }
}

FiguresOfMerit figures_of_merit(double e1, double e2, double e3) {
  if (!(e1 >= e2 && e2 >= e3 && e3 >= 0.0)) {
    std::ostringstream msg;
    msg << "expected E1 >= E2 >= E3 >= 0, got (" << e1 << ", " << e2 << ", " << e3 << ")";
    throw Error(ErrorCode::UnsortedInput, msg.str());
  }
  FiguresOfMerit f;
  f.all = std::cbrt(e1 * e2 * e3);
  const double pair_mean = std::sqrt(e1 * e2);
  f.two_gated = !(e3 < std::max(kGateAbsolute, kGateRatio * pair_mean));
  f.two = f.two_gated ? 0.0 : pair_mean;
  f.one_gated = !(e2 < std::max(kGateAbsolute, kGateRatio * e1));
  f.one = f.one_gated ? 0.0 : e1;
  return f;
}

FiguresOfMerit figures_of_merit(const std::array<double, 3>& unsorted, Arity arity) {
  const auto s = sorted_descending(unsorted, arity);
  return figures_of_merit(s[0].value, s[1].value, s[2].value);
}

const std::vector<CatalogEntry>& squeezing_catalog() {
  static const std::vector<CatalogEntry> catalog = build_catalog();
  return catalog;
}

const CatalogEntry* find_catalog_entry(std::string_view label) {
  for (const auto& e : squeezing_catalog())
    if (e.label == label) return &e;
  return nullptr;
}

std::vector<SqueezedQuadrature> squeezing_scan(const CovarianceMatrix& mechanical,
                                               const std::vector<CatalogEntry>& catalog) {
  require_three_particles(mechanical);
  std::vector<SqueezedQuadrature> out;
  for (const auto& entry : catalog) {
    const double variance = gaussian::quadrature_variance(mechanical, entry.coefficients).variance;
    if (variance < kSqueezingThreshold) out.push_back({entry.label, entry.coefficients, variance});
  }
  return out;
}

std::array<ModeOccupation, 3> collective_mode_occupations(const CovarianceMatrix& mechanical,
                                                          const system::BogoliubovSpec& spec) {
  require_three_particles(mechanical);
  if (!spec.normalized()) throw Error(ErrorCode::NotNormalized, "Bogoliubov coefficients not normalized");
  const auto modes = system::mode_coefficients(spec);
  std::array<ModeOccupation, 3> out{};
  for (Eigen::Index k = 0; k < 3; ++k) {
    // beta = (x_beta + i p_beta) / sqrt(2) with x_beta = sum (u + v) x_j and
    // p_beta = sum (u - v) p_j, so <beta^dag beta> = (<x_beta^2> + <p_beta^2> - [u.u - v.v]) / 2.
    Vector cx = Vector::Zero(6), cp = Vector::Zero(6);
    double norm = 0.0;
    for (Eigen::Index j = 0; j < 3; ++j) {
      const double u = modes.annihilation(k, j), v = modes.creation(k, j);
      cx(2 * j) = u + v;
      cp(2 * j + 1) = u - v;
      norm += u * u - v * v;
    }
    const auto& m = mechanical.matrix();
    const double n = 0.25 * (cx.dot(m * cx) + cp.dot(m * cp)) - 0.5 * norm;
    out[static_cast<std::size_t>(k)] = {n, n < 1.0};
  }
  return out;
}

EntanglementReport analyze(const CovarianceMatrix& mechanical, const std::optional<system::BogoliubovSpec>& spec) {
  EntanglementReport r;
  r.dyadic = dyadic_negativities(mechanical);
  r.triadic = triadic_negativities(mechanical);
  r.dyadic_sorted = sorted_descending(r.dyadic, Arity::Dyadic);
  r.triadic_sorted = sorted_descending(r.triadic, Arity::Triadic);
  r.dyadic_merit = figures_of_merit(r.dyadic_sorted[0].value, r.dyadic_sorted[1].value, r.dyadic_sorted[2].value);
  r.triadic_merit = figures_of_merit(r.triadic_sorted[0].value, r.triadic_sorted[1].value, r.triadic_sorted[2].value);
  r.squeezed = squeezing_scan(mechanical);
  if (spec) r.occupations = collective_mode_occupations(mechanical, *spec);
  return r;
}

}  // namespace levarray::entanglement
