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

#include "levarray/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "levarray/error.hpp"

namespace levarray::gaussian {
namespace {

using Index = Eigen::Index;

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << what << " must be square, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorCode::ShapeMismatch, msg.str());
  }
}

void require_modes(const ModeSet& modes, std::size_t total) {
  if (modes.empty()) throw Error(ErrorCode::InvalidArgument, "mode set is empty");
  for (std::size_t m : modes) {
    if (m >= total) {
      std::ostringstream msg;
      msg << "mode index " << m << " outside [0, " << total << ")";
      throw Error(ErrorCode::IndexOutOfRange, msg.str());
    }
  }
}

// Position of (i, j), i <= j, in the row-major upper triangle of an n x n matrix.
inline Index upper_index(Index i, Index j, Index n) { return i * n - i * (i - 1) / 2 + (j - i); }

Matrix solve_vectorized(const Eigen::PartialPivLU<Matrix>& lu, const Matrix& rhs_matrix) {
  const Index n = rhs_matrix.rows();
  Vector rhs(n * (n + 1) / 2);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) rhs(upper_index(i, j, n)) = -rhs_matrix(i, j);
  const Vector sol = lu.solve(rhs);
  Matrix v(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) v(i, j) = v(j, i) = sol(upper_index(i, j, n));
  return v;
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Matrix entries) : entries_(std::move(entries)) {
  require_square(entries_, "covariance matrix");
  if (entries_.rows() == 0 || entries_.rows() % 2 != 0) {
    throw Error(ErrorCode::ShapeMismatch, "covariance dimension must be positive and even");
  }
  if (!entries_.allFinite()) throw Error(ErrorCode::NumericalFailure, "covariance has non-finite entries");
  const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance) {
    std::ostringstream msg;
    msg << "covariance not symmetric (max asymmetry " << asym << ")";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

CovarianceMatrix CovarianceMatrix::vacuum(std::size_t modes) {
  return CovarianceMatrix(Matrix::Identity(static_cast<Index>(2 * modes), static_cast<Index>(2 * modes)));
}

CovarianceMatrix CovarianceMatrix::thermal(std::size_t modes, double nbar) {
  const auto d = static_cast<Index>(2 * modes);
  return CovarianceMatrix((2.0 * nbar + 1.0) * Matrix::Identity(d, d));
}

CovarianceMatrix CovarianceMatrix::two_mode_squeezed(double r) {
  const double c = std::cosh(2.0 * r), s = std::sinh(2.0 * r);
  Matrix m(4, 4);
  m << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  return CovarianceMatrix(std::move(m));
}

bool CovarianceMatrix::is_physical(double tolerance) const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() < -kSymmetryTolerance) return false;
  const auto nu = symplectic_eigenvalues(*this);
  return nu.front() >= 1.0 - tolerance;
}

Matrix symplectic_form(std::size_t modes) {
  const auto d = static_cast<Index>(2 * modes);
  Matrix omega = Matrix::Zero(d, d);
  for (Index k = 0; k < d; k += 2) {
    omega(k, k + 1) = 1.0;
    omega(k + 1, k) = -1.0;
  }
  return omega;
}

CovarianceMatrix rotate_mode(const CovarianceMatrix& v, std::size_t mode, double angle) {
  require_modes({mode}, v.modes());
  const auto d = static_cast<Index>(v.dim());
  Matrix s = Matrix::Identity(d, d);
  const auto k = static_cast<Index>(2 * mode);
  s(k, k) = s(k + 1, k + 1) = std::cos(angle);
  s(k, k + 1) = std::sin(angle);
  s(k + 1, k) = -std::sin(angle);
  const Matrix out = s * v.matrix() * s.transpose();
  return CovarianceMatrix(0.5 * (out + out.transpose()));
}

void validate(const Bipartition& split, std::size_t modes) {
  require_modes(split.party_a, modes);
  require_modes(split.party_b, modes);
  for (std::size_t a : split.party_a) {
    if (std::find(split.party_b.begin(), split.party_b.end(), a) != split.party_b.end()) {
      throw Error(ErrorCode::InvalidArgument, "bipartition parties overlap");
    }
  }
}

double spectral_abscissa(const Matrix& drift) {
  require_square(drift, "drift");
  Eigen::EigenSolver<Matrix> es(drift, false);
  if (es.info() == Eigen::Success) return es.eigenvalues().real().maxCoeff();
  // Decoupled blocks can stall the default QR sweep count.
  es.setMaxIterations(1000 * static_cast<Eigen::Index>(drift.rows()));
  es.compute(drift, false);
  if (es.info() == Eigen::Success) return es.eigenvalues().real().maxCoeff();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(drift.cast<std::complex<double>>(), false);
  if (ces.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "drift eigenvalues did not converge");
  return ces.eigenvalues().real().maxCoeff();
}

double lyapunov_residual(const Matrix& drift, const Matrix& diffusion, const Matrix& v) {
  return (drift * v + v * drift.transpose() + diffusion).cwiseAbs().maxCoeff();
}

CovarianceMatrix lyapunov_solve(const Matrix& drift, const Matrix& diffusion) {
  require_square(drift, "drift");
  require_square(diffusion, "diffusion");
  if (drift.rows() != diffusion.rows()) throw Error(ErrorCode::ShapeMismatch, "drift and diffusion sizes differ");
  if ((diffusion - diffusion.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
    throw Error(ErrorCode::InvalidArgument, "diffusion matrix not symmetric");
  }
  const double abscissa = spectral_abscissa(drift);
  if (!(abscissa < -kStabilityMargin)) {
    std::ostringstream msg;
    msg << "drift not Hurwitz (spectral abscissa " << abscissa << ")";
    throw Error(ErrorCode::NotStable, msg.str());
  }
  return detail::lyapunov_solve_hurwitz(drift, diffusion);
}

namespace detail {

CovarianceMatrix lyapunov_solve_hurwitz(const Matrix& drift, const Matrix& diffusion) {
  // Row (i, j) of the system is (A V + V A^T)_ij = sum_k A_ik V_kj + A_jk V_ik.
  const Index n = drift.rows();
  const Index m = n * (n + 1) / 2;
  Matrix system = Matrix::Zero(m, m);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const Index row = upper_index(i, j, n);
      for (Index k = 0; k < n; ++k) {
        if (const double a = drift(i, k); a != 0.0) {
          system(row, k <= j ? upper_index(k, j, n) : upper_index(j, k, n)) += a;
        }
        if (const double a = drift(j, k); a != 0.0) {
          system(row, i <= k ? upper_index(i, k, n) : upper_index(k, i, n)) += a;
        }
      }
    }
  }
  const Eigen::PartialPivLU<Matrix> lu(system);

  Matrix v = solve_vectorized(lu, diffusion);
  const double tolerance = kLyapunovResidualTolerance * std::max(1.0, diffusion.cwiseAbs().maxCoeff());
  double residual = v.allFinite() ? lyapunov_residual(drift, diffusion, v) : INFINITY;
  if (std::isfinite(residual) && residual > tolerance) {
    const Matrix r = drift * v + v * drift.transpose() + diffusion;
    v += solve_vectorized(lu, 0.5 * (r + r.transpose()));
    residual = v.allFinite() ? lyapunov_residual(drift, diffusion, v) : INFINITY;
  }
  if (!(residual <= tolerance)) {
    std::ostringstream msg;
    msg << "Lyapunov residual " << residual << " exceeds " << tolerance;
    throw Error(ErrorCode::SolveFailure, msg.str());
  }
  return CovarianceMatrix(0.5 * (v + v.transpose()));
}

}  // namespace detail

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v) {
  const Matrix omega_v = symplectic_form(v.modes()) * v.matrix();
  Eigen::EigenSolver<Matrix> es(omega_v, false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "symplectic spectrum did not converge");

  // The spectrum of Omega V is {+i nu_k, -i nu_k}; moduli come in equal pairs.
  std::vector<double> moduli(static_cast<std::size_t>(omega_v.rows()));
  for (Index k = 0; k < omega_v.rows(); ++k) moduli[static_cast<std::size_t>(k)] = std::abs(es.eigenvalues()(k));
  std::sort(moduli.begin(), moduli.end());
  std::vector<double> nu(v.modes());
  for (std::size_t k = 0; k < nu.size(); ++k) nu[k] = 0.5 * (moduli[2 * k] + moduli[2 * k + 1]);
  return nu;
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& v, const ModeSet& party) {
  require_modes(party, v.modes());
  Matrix out = v.matrix();
  for (std::size_t mode : party) {
    const auto p = static_cast<Index>(2 * mode + 1);
    out.row(p) *= -1.0;
    out.col(p) *= -1.0;
  }
  return CovarianceMatrix(std::move(out));
}

CovarianceMatrix reduce(const CovarianceMatrix& v, const ModeSet& keep) {
  require_modes(keep, v.modes());
  std::vector<Index> rows;
  rows.reserve(2 * keep.size());
  for (std::size_t mode : keep) {
    rows.push_back(static_cast<Index>(2 * mode));
    rows.push_back(static_cast<Index>(2 * mode + 1));
  }
  const auto d = static_cast<Index>(rows.size());
  Matrix out(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) out(i, j) = v.matrix()(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(j)]);
  return CovarianceMatrix(std::move(out));
}

double log_negativity(const CovarianceMatrix& v, const Bipartition& split) {
  validate(split, v.modes());
  ModeSet keep = split.party_a;
  keep.insert(keep.end(), split.party_b.begin(), split.party_b.end());
  std::sort(keep.begin(), keep.end());

  ModeSet local_a;
  for (std::size_t a : split.party_a) {
    local_a.push_back(static_cast<std::size_t>(std::find(keep.begin(), keep.end(), a) - keep.begin()));
  }
  const auto nu = symplectic_eigenvalues(partial_transpose(reduce(v, keep), local_a));
  double e = 0.0;
  for (double value : nu) {
    if (value < 1.0) e -= std::log(value);
  }
  return e;
}

QuadratureVariance quadrature_variance(const CovarianceMatrix& v, const Vector& coefficients) {
  if (static_cast<std::size_t>(coefficients.size()) != v.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "coefficient vector length differs from covariance dimension");
  }
  const double norm = coefficients.norm();
  if (norm == 0.0) throw Error(ErrorCode::ZeroVector, "quadrature coefficients are all zero");
  const Vector c = coefficients / norm;
  return {c.dot(v.matrix() * c), norm};
}

MinimumQuadrature min_variance_quadrature(const CovarianceMatrix& v, const ModeSet& modes) {
  const CovarianceMatrix block = reduce(v, modes);
  Eigen::SelfAdjointEigenSolver<Matrix> es(block.matrix());
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "covariance eigenvalues did not converge");
  Vector c = es.eigenvectors().col(0);
  Index lead = 0;
  c.cwiseAbs().maxCoeff(&lead);
  if (c(lead) < 0.0) c = -c;
  return {es.eigenvalues()(0), modes, c};
}

}  // namespace levarray::gaussian
