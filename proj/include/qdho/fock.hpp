// Copyright 2026 The qdho Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Truncated Fock space |0>, ..., |D-1>: ladder operators and the pure
// states used as initial conditions.

#include <cmath>
#include <string>

#include "qdho/error.hpp"
#include "qdho/linalg.hpp"
#include "qdho/tolerances.hpp"

namespace qdho {

class FockSpace {
 public:
  explicit FockSpace(Eigen::Index dim) : dim_(dim) {
    if (dim < 2) throw ConfigError("FockSpace: dimension must be >= 2, got " + std::to_string(dim));
  }
  [[nodiscard]] Eigen::Index dim() const { return dim_; }
  bool operator==(const FockSpace&) const = default;

 private:
  Eigen::Index dim_;
};

/// A D x D operator on a truncated Fock space.
struct FockOperator {
  FockSpace space;
  ComplexMatrix matrix;
};

/// Normalized pure state. `truncation_deficit` is the probability mass the
/// untruncated state carries on levels >= D, removed by renormalization.
struct StateVector {
  FockSpace space;
  ComplexVector amplitudes;
  double truncation_deficit = 0.0;
};

/// Density operator on a truncated Fock space. The constructor only checks
/// the shape; `validated` also checks Hermiticity, unit trace and positivity.
class DensityMatrix {
 public:
  DensityMatrix(FockSpace space, ComplexMatrix matrix)
      : space_(space), matrix_(std::move(matrix)) {
    if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim()) {
      throw DimensionError("DensityMatrix: matrix is not " + std::to_string(space_.dim()) + "x" +
                           std::to_string(space_.dim()));
    }
  }

  static DensityMatrix validated(FockSpace space, ComplexMatrix matrix,
                                 const Tolerances& tol = kDefaultTolerances) {
    DensityMatrix rho(space, std::move(matrix));
    const double herm = hermiticity_error(rho.matrix());
    if (herm > tol.density_hermitian) {
      throw ConfigError("DensityMatrix: not Hermitian (max |rho - rho^dagger| = " +
                        std::to_string(herm) + ")");
    }
    const double drift = std::abs(rho.matrix().trace() - 1.0);
    if (drift > tol.density_trace) {
      throw ConfigError("DensityMatrix: trace differs from 1 by " + std::to_string(drift));
    }
    const double min_eig = hermitian_eigenvalues(rho.matrix()).front();
    if (min_eig < tol.density_min_eigenvalue) {
      throw ConfigError("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
    }
    return rho;
  }

  [[nodiscard]] const FockSpace& space() const { return space_; }
  [[nodiscard]] const ComplexMatrix& matrix() const { return matrix_; }
  [[nodiscard]] Eigen::Index dim() const { return space_.dim(); }

 private:
  FockSpace space_;
  ComplexMatrix matrix_;
};

/// a with a(n-1, n) = sqrt(n).
inline FockOperator annihilation(FockSpace space) {
  ComplexMatrix a = ComplexMatrix::Zero(space.dim(), space.dim());
  for (Eigen::Index n = 1; n < space.dim(); ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {space, std::move(a)};
}

inline FockOperator creation(FockSpace space) {
  return {space, annihilation(space).matrix.adjoint()};
}

/// N = diag(0, 1, ..., D-1).
inline FockOperator number(FockSpace space) {
  ComplexMatrix n = ComplexMatrix::Zero(space.dim(), space.dim());
  for (Eigen::Index k = 0; k < space.dim(); ++k) n(k, k) = static_cast<double>(k);
  return {space, std::move(n)};
}

inline StateVector fock_state(FockSpace space, Eigen::Index n) {
  if (n < 0 || n >= space.dim()) {
    throw ConfigError("fock_state: level " + std::to_string(n) + " outside 0.." +
                      std::to_string(space.dim() - 1));
  }
  ComplexVector psi = ComplexVector::Zero(space.dim());
  psi(n) = 1.0;
  return {space, std::move(psi), 0.0};
}

/// e^{-|alpha|^2} sum_{n >= dim} |alpha|^{2n} / n!, summed in log space.
inline double coherent_tail_mass(cplx alpha, Eigen::Index dim) {
  const double r2 = std::norm(alpha);
  if (r2 == 0.0) return 0.0;
  const double log_r2 = std::log(r2);
  double sum = 0.0;
  for (Eigen::Index n = dim;; ++n) {
    const double nd = static_cast<double>(n);
    const double term = std::exp(-r2 + nd * log_r2 - std::lgamma(nd + 1.0));
    sum += term;
    // Past the Poisson mode the terms decrease geometrically.
    if (nd > r2 && (term == 0.0 || term < 1e-18 * sum)) break;
  }
  return sum;
}

/// Probability that the squeezed vacuum exp(1/2 (beta a^dagger^2 - conj(beta) a^2))|0>
/// puts on levels >= dim:
/// sum_{2n >= dim} (2n)! / (4^n (n!)^2) tanh(r)^{2n} / cosh(r), r = |beta|.
inline double squeezed_tail_mass(cplx beta, Eigen::Index dim) {
  const double r = std::abs(beta);
  if (r == 0.0) return 0.0;
  const double log_t2 = 2.0 * std::log(std::tanh(r));
  const double log_norm = -std::log(std::cosh(r));
  double sum = 0.0;
  for (Eigen::Index n = (dim + 1) / 2;; ++n) {
    const double nd = static_cast<double>(n);
    const double log_binom = std::lgamma(2.0 * nd + 1.0) - 2.0 * std::lgamma(nd + 1.0) -
                             nd * std::log(4.0);
    const double term = std::exp(log_norm + log_binom + nd * log_t2);
    sum += term;
    if (term == 0.0 || term < 1e-18 * sum) break;
  }
  return sum;
}

namespace detail {

inline void check_coherent_truncation(cplx alpha, Eigen::Index dim, const Tolerances& tol) {
  const double tail = coherent_tail_mass(alpha, dim);
  if (tail > tol.coherent_tail) {
    throw TruncationError("coherent state alpha=(" + std::to_string(alpha.real()) + "," +
                          std::to_string(alpha.imag()) + ") loses " + std::to_string(tail) +
                          " probability beyond dimension " + std::to_string(dim));
  }
}

inline StateVector renormalized(FockSpace space, ComplexVector psi, double deficit) {
  const double norm = psi.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericError("state has zero or non-finite norm");
  psi /= norm;
  return {space, std::move(psi), deficit};
}

}  // namespace detail

/// Coherent state from its number-basis expansion alpha^n / sqrt(n!).
inline StateVector coherent_state(FockSpace space, cplx alpha,
                                  const Tolerances& tol = kDefaultTolerances) {
  detail::check_coherent_truncation(alpha, space.dim(), tol);
  ComplexVector psi(space.dim());
  psi(0) = std::exp(-0.5 * std::norm(alpha));
  for (Eigen::Index n = 1; n < space.dim(); ++n) {
    psi(n) = psi(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }
  return detail::renormalized(space, std::move(psi), coherent_tail_mass(alpha, space.dim()));
}

/// Coherent state as the displaced vacuum exp(alpha a^dagger - conj(alpha) a)|0>.
inline StateVector coherent_state_via_displacement(FockSpace space, cplx alpha,
                                                   const Tolerances& tol = kDefaultTolerances) {
  detail::check_coherent_truncation(alpha, space.dim(), tol);
  const ComplexMatrix a = annihilation(space).matrix;
  const ComplexMatrix generator = alpha * a.adjoint() - std::conj(alpha) * a;
  ComplexVector psi = expm(generator).col(0);
  return detail::renormalized(space, std::move(psi), coherent_tail_mass(alpha, space.dim()));
}

/// Squeezed vacuum exp(1/2 (beta a^dagger^2 - conj(beta) a^2))|0>, renormalized.
inline StateVector squeezed_state(FockSpace space, cplx beta,
                                  const Tolerances& tol = kDefaultTolerances) {
  const double tail = squeezed_tail_mass(beta, space.dim());
  if (tail > tol.squeezed_tail) {
    throw TruncationError("squeezed state beta=(" + std::to_string(beta.real()) + "," +
                          std::to_string(beta.imag()) + ") loses " + std::to_string(tail) +
                          " probability beyond dimension " + std::to_string(space.dim()));
  }
  const ComplexMatrix a = annihilation(space).matrix;
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix generator = 0.5 * (beta * a2.adjoint() - std::conj(beta) * a2);
  ComplexVector psi = expm(generator).col(0);
  return detail::renormalized(space, std::move(psi), tail);
}

/// |psi><psi|.
inline DensityMatrix density_from_pure(const StateVector& psi) {
  return DensityMatrix(psi.space, psi.amplitudes * psi.amplitudes.adjoint());
}

}  // namespace qdho
