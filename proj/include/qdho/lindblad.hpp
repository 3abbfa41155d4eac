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

// The damped-oscillator master equation
//   d rho/dt = -i omega [N, rho]
//              - mu/2 (N rho + rho N - 2 a rho a^dagger)
//              - nu/2 (a a^dagger rho + rho a a^dagger - 2 a^dagger rho a)
// in matrix form and as a D^2 x D^2 Liouvillian acting on vectorized rho,
// with two numerical propagators (dense expm and RK4).

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qdho/error.hpp"
#include "qdho/fock.hpp"
#include "qdho/linalg.hpp"

namespace qdho {

/// Rates and truncation of the model; requires mu > nu >= 0.
class ModelParams {
 public:
  ModelParams(double omega, double mu, double nu, FockSpace space)
      : omega_(omega), mu_(mu), nu_(nu), space_(space) {
    if (!std::isfinite(omega) || !std::isfinite(mu) || !std::isfinite(nu)) {
      throw ConfigError("ModelParams: omega, mu and nu must be finite");
    }
    if (!(nu >= 0.0)) throw ConfigError("ModelParams: requires nu >= 0, got nu=" + std::to_string(nu));
    if (!(mu > nu)) {
      throw ConfigError("ModelParams: requires mu > nu, got mu=" + std::to_string(mu) +
                        " nu=" + std::to_string(nu));
    }
  }

  [[nodiscard]] double omega() const { return omega_; }
  [[nodiscard]] double mu() const { return mu_; }
  [[nodiscard]] double nu() const { return nu_; }
  [[nodiscard]] const FockSpace& space() const { return space_; }
  [[nodiscard]] Eigen::Index dim() const { return space_.dim(); }

 private:
  double omega_;
  double mu_;
  double nu_;
  FockSpace space_;
};

/// Right-hand side of the master equation with the ladder matrices cached.
class MasterEquation {
 public:
  explicit MasterEquation(const ModelParams& params)
      : params_(params),
        a_(annihilation(params.space()).matrix),
        ad_(creation(params.space()).matrix),
        n_(number(params.space()).matrix),
        aad_(a_ * ad_) {}

  [[nodiscard]] ComplexMatrix operator()(const ComplexMatrix& rho) const {
    const double mu = params_.mu();
    const double nu = params_.nu();
    const ComplexMatrix n_rho = n_ * rho;
    const ComplexMatrix rho_n = rho * n_;
    ComplexMatrix out = -kI * params_.omega() * (n_rho - rho_n);
    out -= 0.5 * mu * (n_rho + rho_n - 2.0 * a_ * rho * ad_);
    out -= 0.5 * nu * (aad_ * rho + rho * aad_ - 2.0 * ad_ * rho * a_);
    return out;
  }

  [[nodiscard]] const ModelParams& params() const { return params_; }

 private:
  ModelParams params_;
  ComplexMatrix a_;
  ComplexMatrix ad_;
  ComplexMatrix n_;
  ComplexMatrix aad_;
};

inline ComplexMatrix master_rhs(const ModelParams& params, const DensityMatrix& rho) {
  if (!(rho.space() == params.space())) throw DimensionError("master_rhs: state and model dimensions differ");
  return MasterEquation(params)(rho.matrix());
}

/// The four superoperators K0 = N x 1 - 1 x N, K+ = a^dagger x a^dagger,
/// K- = a x a, K3 = (N x 1 + 1 x N + 1 x 1) / 2 on the D^2-dimensional space.
struct SuperGenerators {
  ComplexMatrix k0;
  ComplexMatrix k_plus;
  ComplexMatrix k_minus;
  ComplexMatrix k3;
};

inline SuperGenerators super_generators(FockSpace space) {
  const ComplexMatrix a = annihilation(space).matrix;
  const ComplexMatrix ad = creation(space).matrix;
  const ComplexMatrix n = number(space).matrix;
  const ComplexMatrix id = identity(space.dim());
  return {kron(n, id) - kron(id, n), kron(ad, ad), kron(a, a),
          0.5 * (kron(n, id) + kron(id, n) + kron(id, id))};
}

/// -i omega K0 + nu K+ + mu K- - (mu + nu) K3 + (mu - nu)/2 (1 x 1).
/// Equal to the Liouvillian only away from the top Fock level, where the
/// truncated a a^dagger differs from N + 1.
inline ComplexMatrix liouvillian_from_generators(const ModelParams& params) {
  const SuperGenerators k = super_generators(params.space());
  const Eigen::Index d2 = params.dim() * params.dim();
  return -kI * params.omega() * k.k0 + params.nu() * k.k_plus + params.mu() * k.k_minus -
         (params.mu() + params.nu()) * k.k3 + 0.5 * (params.mu() - params.nu()) * identity(d2);
}

struct Liouvillian {
  ModelParams params;
  ComplexMatrix matrix;
};

/// Vectorized master equation assembled term by term with A rho B -> kron(A, B^T),
/// using the truncated matrices a, a^dagger, N and a a^dagger.
inline Liouvillian build_liouvillian(const ModelParams& params) {
  const Eigen::Index d = params.dim();
  const ComplexMatrix a = annihilation(params.space()).matrix;
  const ComplexMatrix ad = creation(params.space()).matrix;
  const ComplexMatrix n = number(params.space()).matrix;
  const ComplexMatrix aad = a * ad;
  const ComplexMatrix id = identity(d);
  const ComplexMatrix nt = n.transpose();
  const ComplexMatrix aadt = aad.transpose();

  ComplexMatrix l = -kI * params.omega() * (kron(n, id) - kron(id, nt));
  l += -0.5 * params.mu() * (kron(n, id) + kron(id, nt)) + params.mu() * kron(a, ad.transpose());
  l += -0.5 * params.nu() * (kron(aad, id) + kron(id, aadt)) + params.nu() * kron(ad, a.transpose());
  return {params, std::move(l)};
}

inline ComplexMatrix hermitize(const ComplexMatrix& x) { return 0.5 * (x + x.adjoint()); }

namespace detail {

inline void check_time(double t, const char* where) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw ConfigError(std::string(where) + ": time must be finite and >= 0, got " + std::to_string(t));
  }
}

/// Superoperator indices i1 * d + i2 grouped by i1 - i2.
inline std::vector<std::vector<Eigen::Index>> difference_sectors(Eigen::Index d) {
  std::vector<std::vector<Eigen::Index>> sectors(static_cast<std::size_t>(2 * d - 1));
  for (Eigen::Index i1 = 0; i1 < d; ++i1)
    for (Eigen::Index i2 = 0; i2 < d; ++i2) sectors[static_cast<std::size_t>(i1 - i2 + d - 1)].push_back(i1 * d + i2);
  return sectors;
}

/// True when x has no entries coupling different values of i1 - i2.
inline bool conserves_difference(const ComplexMatrix& x, Eigen::Index d) {
  for (Eigen::Index c = 0; c < x.cols(); ++c)
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      if (x(r, c) != 0.0 && r / d - r % d != c / d - c % d) return false;
  return true;
}

inline ComplexMatrix gather(const ComplexMatrix& x, const std::vector<Eigen::Index>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) out(r, c) = x(idx[r], idx[c]);
  return out;
}

/// expm of a d^2 x d^2 superoperator that conserves i1 - i2, one sector at a time.
inline ComplexMatrix sector_expm(const ComplexMatrix& x, Eigen::Index d) {
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const auto& idx : difference_sectors(d)) {
    const ComplexMatrix e = expm(gather(x, idx));
    for (std::size_t c = 0; c < idx.size(); ++c)
      for (std::size_t r = 0; r < idx.size(); ++r) out(idx[r], idx[c]) = e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  return out;
}

}  // namespace detail

/// devectorize(expm(t L) vectorize(rho0)) before symmetrization. The
/// Liouvillian never couples different values of n1 - n2, so when that holds
/// the exponential is taken sector by sector; otherwise it is taken whole.
inline ComplexMatrix evolve_vectorized(const Liouvillian& l, const DensityMatrix& rho0, double t) {
  detail::check_time(t, "propagate_expm");
  if (!(rho0.space() == l.params.space())) throw DimensionError("propagate_expm: state and model dimensions differ");
  if (t == 0.0) return rho0.matrix();
  const Eigen::Index d = rho0.dim();
  const ComplexVector x = vectorize(rho0.matrix()).entries();
  if (!detail::conserves_difference(l.matrix, d)) {
    return devectorize(VectorizedState(expm(t * l.matrix) * x), d, d);
  }
  ComplexVector y = ComplexVector::Zero(x.size());
  for (const auto& idx : detail::difference_sectors(d)) {
    const ComplexMatrix e = expm(t * detail::gather(l.matrix, idx));
    for (std::size_t r = 0; r < idx.size(); ++r) {
      cplx sum = 0.0;
      for (std::size_t c = 0; c < idx.size(); ++c) sum += e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * x(idx[c]);
      y(idx[r]) = sum;
    }
  }
  return devectorize(VectorizedState(std::move(y)), d, d);
}

/// Reference solution through the dense matrix exponential of the Liouvillian.
/// The result is symmetrized; its trace is left as computed.
inline DensityMatrix propagate_expm(const Liouvillian& l, const DensityMatrix& rho0, double t) {
  if (t == 0.0) return rho0;
  return DensityMatrix(rho0.space(), hermitize(evolve_vectorized(l, rho0, t)));
}

inline DensityMatrix propagate_expm(const ModelParams& params, const DensityMatrix& rho0, double t) {
  detail::check_time(t, "propagate_expm");
  if (t == 0.0) return rho0;
  return propagate_expm(build_liouvillian(params), rho0, t);
}

inline constexpr int kDefaultRk4Steps = 2048;

/// Classical RK4 on the matrix ODE, recording the state at each requested
/// time (ascending). Steps are shortened to land exactly on every time.
inline std::vector<DensityMatrix> propagate_rk4_series(const ModelParams& params,
                                                       const DensityMatrix& rho0,
                                                       const std::vector<double>& times, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("propagate_rk4: dt must be positive, got " + std::to_string(dt));
  }
  if (!(rho0.space() == params.space())) throw DimensionError("propagate_rk4: state and model dimensions differ");
  const MasterEquation rhs(params);
  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  ComplexMatrix rho = rho0.matrix();
  double now = 0.0;
  for (double target : times) {
    detail::check_time(target, "propagate_rk4");
    if (target < now) throw ConfigError("propagate_rk4: times must be ascending");
    while (now < target) {
      double h = dt;
      // Absorb a sliver remainder into the current step instead of taking a tiny one.
      if (now + h >= target || target - (now + h) < 1e-12 * dt) h = target - now;
      const ComplexMatrix k1 = rhs(rho);
      const ComplexMatrix k2 = rhs(rho + 0.5 * h * k1);
      const ComplexMatrix k3 = rhs(rho + 0.5 * h * k2);
      const ComplexMatrix k4 = rhs(rho + h * k3);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      now = (h == target - now) ? target : now + h;
    }
    if (!all_finite(rho)) throw NumericError("propagate_rk4: state overflowed");
    out.emplace_back(rho0.space(), target == 0.0 ? rho0.matrix() : hermitize(rho));
  }
  return out;
}

inline DensityMatrix propagate_rk4(const ModelParams& params, const DensityMatrix& rho0, double t,
                                   std::optional<double> dt = std::nullopt) {
  detail::check_time(t, "propagate_rk4");
  if (t == 0.0) return rho0;
  return propagate_rk4_series(params, rho0, {t}, dt.value_or(t / kDefaultRk4Steps)).front();
}

}  // namespace qdho
