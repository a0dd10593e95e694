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

// Gaussian-state linear algebra in the doubled quadrature convention
// V_jk = <r_j r_k + r_k r_j> - 2<r_j><r_k>, where the vacuum is the identity.
// Quadratures are ordered in (x, p) pairs per mode.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace levarray::gaussian {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ModeSet = std::vector<std::size_t>;

inline constexpr double kSymmetryTolerance = 1e-9;
inline constexpr double kPhysicalTolerance = 1e-6;
inline constexpr double kStabilityMargin = 1e-12;
inline constexpr double kLyapunovResidualTolerance = 1e-8;

/// Real symmetric second-moment matrix of an n-mode Gaussian state.
/// Construction checks shape and symmetry only; physicality is a query,
/// because partial transposes share this type.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Matrix entries);

  static CovarianceMatrix vacuum(std::size_t modes);
  static CovarianceMatrix thermal(std::size_t modes, double nbar);
  /// Two-mode squeezed vacuum with squeezing parameter r.
  static CovarianceMatrix two_mode_squeezed(double r);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  std::size_t modes() const noexcept { return dim() / 2; }
  const Matrix& matrix() const noexcept { return entries_; }
  double operator()(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  /// All symplectic eigenvalues >= 1 - tolerance and V positive semidefinite.
  bool is_physical(double tolerance = kPhysicalTolerance) const;

 private:
  Matrix entries_;
};

/// Block-diagonal [[0, 1], [-1, 0]] per mode.
Matrix symplectic_form(std::size_t modes);

/// S V S^T for a phase-space rotation by `angle` applied to one mode.
CovarianceMatrix rotate_mode(const CovarianceMatrix& v, std::size_t mode, double angle);

struct Bipartition {
  ModeSet party_a;
  ModeSet party_b;
};

/// Throws IndexOutOfRange or InvalidArgument when the split is not a pair of
/// disjoint, nonempty subsets of [0, modes).
void validate(const Bipartition& split, std::size_t modes);

/// Largest real part over the eigenvalues of `drift`.
double spectral_abscissa(const Matrix& drift);

/// max |A V + V A^T + N|.
double lyapunov_residual(const Matrix& drift, const Matrix& diffusion, const Matrix& v);

/// Steady state of dr/dt = A r + noise: solves A V + V A^T + N = 0.
///
/// The equation is vectorized over the upper triangle of V and solved as a
/// dense linear system, followed by one step of iterative refinement when
/// the residual exceeds 1e-8 * max(1, |N|_max).
CovarianceMatrix lyapunov_solve(const Matrix& drift, const Matrix& diffusion);

namespace detail {
/// lyapunov_solve without the shape and stability checks; the caller has
/// already established that `drift` is Hurwitz.
CovarianceMatrix lyapunov_solve_hurwitz(const Matrix& drift, const Matrix& diffusion);
}  // namespace detail

/// Moduli of the eigenvalues of i*Omega*V, one per mode, ascending.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v);

/// Flips the sign of the momentum row and column of every mode in `party`.
CovarianceMatrix partial_transpose(const CovarianceMatrix& v, const ModeSet& party);

/// Submatrix over the quadratures of `keep`, in the order given.
CovarianceMatrix reduce(const CovarianceMatrix& v, const ModeSet& keep);

/// Natural-log negativity of the split, sum_k max(0, -ln nu_k) over the
/// symplectic spectrum of the partial transpose with respect to party_a.
double log_negativity(const CovarianceMatrix& v, const Bipartition& split);

struct QuadratureVariance {
  double variance = 0.0;
  double norm = 0.0;  ///< Euclidean norm of the coefficients as given.
};

/// c^T V c for the normalized coefficient vector c over all quadratures.
QuadratureVariance quadrature_variance(const CovarianceMatrix& v, const Vector& coefficients);

struct MinimumQuadrature {
  double variance = 0.0;
  ModeSet modes;
  Vector coefficients;  ///< Unit vector over the quadratures of `modes`.
};

/// Smallest variance over all unit quadratures of the given modes.
MinimumQuadrature min_variance_quadrature(const CovarianceMatrix& v, const ModeSet& modes);

}  // namespace levarray::gaussian
