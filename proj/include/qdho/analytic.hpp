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

// Closed-form evolution of the damped oscillator.
//
// With lambda = (mu - nu)/2 the Liouvillian exponential factorizes as
//   exp(t{nu K+ + mu K- - (mu + nu) K3}) = exp(G K+) exp(-2 log F K3) exp(E K-)
// where E, F, G are the hyperbolic coefficients below. Mapped back to
// matrices this gives a double series in a and a^dagger that terminates at
// D - 1 on the truncated space.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qdho/error.hpp"
#include "qdho/fock.hpp"
#include "qdho/lindblad.hpp"
#include "qdho/linalg.hpp"
#include "qdho/tolerances.hpp"

namespace qdho {

struct EFGCoefficients {
  double t = 0.0;
  double e_val = 0.0;
  double f_val = 1.0;
  double g_val = 0.0;
  double log_f = 0.0;
  /// e^{(mu - nu) t / 2} / F(t), finite even where F itself overflows.
  double growth_over_f = 1.0;
};

/// E, F, G at time t. The hyperbolic forms are rewritten in terms of
/// q = e^{-(mu - nu) t}:
///   E = mu (1 - q) / (mu - nu q),  G = nu (1 - q) / (mu - nu q),
///   F = e^{(mu - nu) t / 2} (mu - nu q) / (mu - nu).
inline EFGCoefficients efg(const ModelParams& params, double t) {
  detail::check_time(t, "efg");
  const double mu = params.mu();
  const double nu = params.nu();
  const double half_gap_t = 0.5 * (mu - nu) * t;
  const double q = std::exp(-2.0 * half_gap_t);
  const double one_minus_q = -std::expm1(-2.0 * half_gap_t);
  const double den = mu - nu * q;

  EFGCoefficients c;
  c.t = t;
  c.e_val = mu * one_minus_q / den;
  c.g_val = nu * one_minus_q / den;
  c.log_f = half_gap_t + std::log(den / (mu - nu));
  c.f_val = std::exp(c.log_f);
  c.growth_over_f = (mu - nu) / den;
  if (!std::isfinite(c.f_val)) {
    throw NumericError("efg: F(t) overflows at t=" + std::to_string(t) +
                       " (log F = " + std::to_string(c.log_f) + ")");
  }
  return c;
}

/// e^{tA} for A = [[-(mu+nu)/2, nu], [-mu, (mu+nu)/2]] in cosh/sinh form.
inline ComplexMatrix two_by_two_exponential(const ModelParams& params, double t) {
  detail::check_time(t, "two_by_two_exponential");
  const double mu = params.mu();
  const double nu = params.nu();
  const double x = 0.5 * (mu - nu) * t;
  const double ch = std::cosh(x);
  const double sh = std::sinh(x);
  const double k = (mu + nu) / (mu - nu);
  ComplexMatrix m(2, 2);
  m << ch - k * sh, 2.0 * nu / (mu - nu) * sh,
       -2.0 * mu / (mu - nu) * sh, ch + k * sh;
  if (!all_finite(m)) throw NumericError("two_by_two_exponential: overflow at t=" + std::to_string(t));
  return m;
}

/// The generator matrix A itself.
inline ComplexMatrix two_by_two_generator(const ModelParams& params) {
  ComplexMatrix a(2, 2);
  a << -0.5 * (params.mu() + params.nu()), params.nu(), -params.mu(), 0.5 * (params.mu() + params.nu());
  return a;
}

/// 2x2 realization k+, k-, k3 of su(1,1).
struct Sl2Generators {
  ComplexMatrix k_plus;
  ComplexMatrix k_minus;
  ComplexMatrix k3;
};

inline Sl2Generators sl2_generators() {
  Sl2Generators g{ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2)};
  g.k_plus(0, 1) = 1.0;
  g.k_minus(1, 0) = -1.0;
  g.k3(0, 0) = 0.5;
  g.k3(1, 1) = -0.5;
  return g;
}

/// m = upper * diagonal * lower with unit-triangular outer factors.
struct GaussFactors {
  ComplexMatrix upper;
  ComplexMatrix diagonal;
  ComplexMatrix lower;
};

/// [[a, b], [c, d]] = [[1, b/d], [0, 1]] diag(1/d, d) [[1, 0], [c/d, 1]] for ad - bc = 1.
inline GaussFactors gauss_decompose(const ComplexMatrix& m, const Tolerances& tol = kDefaultTolerances) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionError("gauss_decompose: matrix must be 2x2");
  const cplx det = m.determinant();
  if (std::abs(det - 1.0) > tol.gauss_det) {
    throw Error("gauss_decompose: determinant " + std::to_string(det.real()) + "+" +
                std::to_string(det.imag()) + "i is not 1");
  }
  const cplx d = m(1, 1);
  if (std::abs(d) < tol.gauss_pivot) throw NumericError("gauss_decompose: singular, lower-right entry vanishes");
  GaussFactors f{identity(2), ComplexMatrix::Zero(2, 2), identity(2)};
  f.upper(0, 1) = m(0, 1) / d;
  f.diagonal(0, 0) = 1.0 / d;
  f.diagonal(1, 1) = d;
  f.lower(1, 0) = m(1, 0) / d;
  return f;
}

/// Residuals of the ODE system satisfied by f = G, g = -2 log F, h = E:
///   f' + (mu + nu) f - mu f^2 = nu,  g' - 2 mu f = -(mu + nu),  h' e^{-g} = mu,
/// with central differences of step 1e-5 max(1, t). `f_offset` shifts f to
/// probe the sensitivity of the check.
inline std::array<double, 3> riccati_residuals(const ModelParams& params, double t, double f_offset = 0.0) {
  if (!(t > 0.0)) throw ConfigError("riccati_residual: requires t > 0");
  const double mu = params.mu();
  const double nu = params.nu();
  double h = 1e-5 * std::max(1.0, t);
  h = std::min(h, 0.5 * t);
  const EFGCoefficients at = efg(params, t);
  const EFGCoefficients lo = efg(params, t - h);
  const EFGCoefficients hi = efg(params, t + h);

  const double f = at.g_val + f_offset;
  const double f_dot = (hi.g_val - lo.g_val) / (2.0 * h);
  const double g = -2.0 * at.log_f;
  const double g_dot = (-2.0 * hi.log_f + 2.0 * lo.log_f) / (2.0 * h);
  const double h_dot = (hi.e_val - lo.e_val) / (2.0 * h);
  return {std::abs(f_dot + (mu + nu) * f - mu * f * f - nu),
          std::abs(g_dot - 2.0 * mu * f + (mu + nu)),
          std::abs(h_dot * std::exp(-g) - mu)};
}

inline double riccati_residual(const ModelParams& params, double t) {
  const auto r = riccati_residuals(params, t);
  return *std::max_element(r.begin(), r.end());
}

namespace detail {

// (a X a^dagger)_{jk} = sqrt((j+1)(k+1)) X_{j+1,k+1}
inline ComplexMatrix lower_both(const ComplexMatrix& x) {
  const Eigen::Index d = x.rows();
  ComplexMatrix y = ComplexMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j + 1 < d; ++j)
    for (Eigen::Index k = 0; k + 1 < d; ++k)
      y(j, k) = std::sqrt(static_cast<double>((j + 1) * (k + 1))) * x(j + 1, k + 1);
  return y;
}

// (a^dagger X a)_{jk} = sqrt(j k) X_{j-1,k-1}
inline ComplexMatrix raise_both(const ComplexMatrix& x) {
  const Eigen::Index d = x.rows();
  ComplexMatrix y = ComplexMatrix::Zero(d, d);
  for (Eigen::Index j = 1; j < d; ++j)
    for (Eigen::Index k = 1; k < d; ++k)
      y(j, k) = std::sqrt(static_cast<double>(j * k)) * x(j - 1, k - 1);
  return y;
}

// sum_m c^m / m! a^m X (a^dagger)^m, exact on the truncated space.
inline ComplexMatrix lowering_series(const ComplexMatrix& x, double c) {
  ComplexMatrix sum = x;
  ComplexMatrix term = x;
  for (Eigen::Index m = 1; m < x.rows() && c != 0.0; ++m) {
    term = (c / static_cast<double>(m)) * lower_both(term);
    sum += term;
  }
  return sum;
}

// sum_n c^n / n! (a^dagger)^n X a^n, exact on the truncated space.
inline ComplexMatrix raising_series(const ComplexMatrix& x, double c) {
  ComplexMatrix sum = x;
  ComplexMatrix term = x;
  for (Eigen::Index n = 1; n < x.rows() && c != 0.0; ++n) {
    term = (c / static_cast<double>(n)) * raise_both(term);
    sum += term;
  }
  return sum;
}

// e^{left N} X e^{right N}; both exponentials are diagonal in the number basis.
inline ComplexMatrix number_conjugate(const ComplexMatrix& x, cplx left, cplx right) {
  const Eigen::Index d = x.rows();
  ComplexMatrix y(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const cplx lj = std::exp(left * static_cast<double>(j));
    for (Eigen::Index k = 0; k < d; ++k) y(j, k) = lj * x(j, k) * std::exp(right * static_cast<double>(k));
  }
  return y;
}

inline void check_space(const ModelParams& params, const DensityMatrix& rho, const char* where) {
  if (!(rho.space() == params.space())) {
    throw DimensionError(std::string(where) + ": state and model dimensions differ");
  }
}

}  // namespace detail

/// rho(t) = e^{(mu-nu)t/2}/F sum_n G^n/n! (a^dagger)^n
///            [e^{(-i omega t - log F) N} {sum_m E^m/m! a^m rho0 (a^dagger)^m} e^{(i omega t - log F) N}] a^n
inline DensityMatrix general_solution(const ModelParams& params, const DensityMatrix& rho0, double t) {
  detail::check_time(t, "general_solution");
  detail::check_space(params, rho0, "general_solution");
  if (t == 0.0) return rho0;
  const EFGCoefficients c = efg(params, t);
  const double wt = params.omega() * t;
  ComplexMatrix x = detail::lowering_series(rho0.matrix(), c.e_val);
  x = detail::number_conjugate(x, cplx(-c.log_f, -wt), cplx(-c.log_f, wt));
  x = detail::raising_series(x, c.g_val);
  x *= c.growth_over_f;
  if (!all_finite(x)) throw NumericError("general_solution: non-finite result at t=" + std::to_string(t));
  return DensityMatrix(rho0.space(), std::move(x));
}

/// Thermal state (1 - G) G^N evolved from the vacuum; exact on the truncated
/// space, so its trace falls short of 1 by G^D.
inline DensityMatrix vacuum_solution(const ModelParams& params, double t) {
  detail::check_time(t, "vacuum_solution");
  const Eigen::Index d = params.dim();
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  rho(0, 0) = 1.0;
  if (t == 0.0 || params.nu() == 0.0) return DensityMatrix(params.space(), std::move(rho));
  const double g = efg(params, t).g_val;
  double weight = 1.0 - g;
  for (Eigen::Index n = 0; n < d; ++n) {
    rho(n, n) = weight;
    weight *= g;
  }
  return DensityMatrix(params.space(), std::move(rho));
}

inline double vacuum_trace_deficit(const ModelParams& params, double t) {
  if (t == 0.0 || params.nu() == 0.0) return 0.0;
  return std::pow(efg(params, t).g_val, static_cast<double>(params.dim()));
}

/// nu = 0: rho(t) = e^{-(mu/2 + i omega) t N} {sum_m (1 - e^{-mu t})^m/m! a^m rho0 (a^dagger)^m}
///                  e^{-(mu/2 - i omega) t N}.
inline DensityMatrix nu_zero_solution(const ModelParams& params, const DensityMatrix& rho0, double t) {
  if (params.nu() != 0.0) throw ConfigError("nu_zero_solution: requires nu == 0");
  detail::check_time(t, "nu_zero_solution");
  detail::check_space(params, rho0, "nu_zero_solution");
  if (t == 0.0) return rho0;
  const double mu = params.mu();
  const double wt = params.omega() * t;
  ComplexMatrix x = detail::lowering_series(rho0.matrix(), -std::expm1(-mu * t));
  x = detail::number_conjugate(x, cplx(-0.5 * mu * t, -wt), cplx(-0.5 * mu * t, wt));
  return DensityMatrix(rho0.space(), std::move(x));
}

/// Coherent amplitude alpha e^{-((mu - nu)/2 + i omega) t}, the damped classical envelope.
inline cplx coherent_envelope(const ModelParams& params, cplx alpha, double t) {
  return alpha * std::exp(-cplx(0.5 * (params.mu() - params.nu()), params.omega()) * t);
}

/// Evolution of |alpha><alpha| in closed form:
///   rho(t) = e^{|alpha|^2 e^{-(mu-nu)t} log G + log(1 - G)}
///            exp{-log G (z a^dagger + conj(z) a - N)},  z = coherent_envelope(t).
/// nu = 0 makes log G singular and is routed to nu_zero_solution.
inline DensityMatrix coherent_solution(const ModelParams& params, cplx alpha, double t,
                                       const Tolerances& tol = kDefaultTolerances) {
  detail::check_time(t, "coherent_solution");
  const StateVector psi0 = coherent_state(params.space(), alpha, tol);
  if (t == 0.0) return density_from_pure(psi0);
  if (params.nu() == 0.0) return nu_zero_solution(params, density_from_pure(psi0), t);

  const double g = efg(params, t).g_val;
  const double log_g = std::log(g);
  const cplx z = coherent_envelope(params, alpha, t);
  const FockSpace space = params.space();
  const ComplexMatrix a = annihilation(space).matrix;
  const ComplexMatrix n = number(space).matrix;
  const ComplexMatrix generator = -log_g * (z * a.adjoint() + std::conj(z) * a - n);
  const double log_scalar = std::norm(alpha) * std::exp(-(params.mu() - params.nu()) * t) * log_g +
                            std::log1p(-g);
  ComplexMatrix rho = std::exp(log_scalar) * expm(generator);
  if (!all_finite(rho)) throw NumericError("coherent_solution: non-finite result at t=" + std::to_string(t));
  return DensityMatrix(space, std::move(rho));
}

/// Discrepancies of the scalar disentangling identities on a truncated space.
struct DisentangleReport {
  /// e^{alpha a^dagger + beta a + gamma N} against
  /// e^{alpha beta (e^gamma - 1 - gamma)/gamma^2} e^{alpha (e^gamma - 1)/gamma a^dagger} e^{gamma N}
  /// e^{beta (e^gamma - 1)/gamma a}.
  double formula1 = 0.0;
  /// e^{u a^dagger} e^{v N} e^{w a} against
  /// e^{-uw (e^v - 1 - v)/(e^v - 1)^2} e^{(uv a^dagger + vw a)/(e^v - 1) + v N}, with (u, v, w) = (alpha, gamma, beta).
  double formula2 = 0.0;
  [[nodiscard]] double max() const { return std::max(formula1, formula2); }
};

/// Size of the leading block on which truncated operator identities are compared.
inline Eigen::Index interior_size(FockSpace space) { return space.dim() / 2; }

/// Frobenius norm of the difference restricted to the interior block.
inline double interior_distance(const ComplexMatrix& x, const ComplexMatrix& y, Eigen::Index k) {
  return (leading_block(x, k) - leading_block(y, k)).norm();
}

inline DisentangleReport disentangle_check(cplx alpha, cplx beta, cplx gamma, FockSpace space,
                                           const Tolerances& tol = kDefaultTolerances) {
  if (gamma == 0.0) throw ConfigError("disentangle_check: gamma must be nonzero");
  detail::check_coherent_truncation(alpha, space.dim(), tol);
  detail::check_coherent_truncation(beta, space.dim(), tol);
  const ComplexMatrix a = annihilation(space).matrix;
  const ComplexMatrix ad = a.adjoint();
  const ComplexMatrix n = number(space).matrix;
  const Eigen::Index k = interior_size(space);
  const cplx eg = std::exp(gamma);

  DisentangleReport r;
  {
    const ComplexMatrix lhs = expm(alpha * ad + beta * a + gamma * n);
    const cplx scalar = std::exp(alpha * beta * (eg - 1.0 - gamma) / (gamma * gamma));
    const ComplexMatrix rhs = scalar * expm(alpha * (eg - 1.0) / gamma * ad) * expm(gamma * n) *
                              expm(beta * (eg - 1.0) / gamma * a);
    r.formula1 = interior_distance(lhs, rhs, k);
  }
  {
    const cplx u = alpha;
    const cplx v = gamma;
    const cplx w = beta;
    const cplx ev1 = std::exp(v) - 1.0;
    const ComplexMatrix lhs = expm(u * ad) * expm(v * n) * expm(w * a);
    const cplx scalar = std::exp(-u * w * (ev1 - v) / (ev1 * ev1));
    const ComplexMatrix rhs = scalar * expm(u * v / ev1 * ad + v * w / ev1 * a + v * n);
    r.formula2 = interior_distance(lhs, rhs, k);
  }
  return r;
}

/// Discrepancies of the reordering rules
///   e^{sa} e^{t a^dagger} = e^{st} e^{t a^dagger} e^{sa},
///   e^{sa} e^{tN} = e^{tN} e^{s e^t a},  e^{tN} e^{s a^dagger} = e^{s e^t a^dagger} e^{tN}.
inline std::array<double, 3> commutation_shuffle_check(cplx s, cplx t, FockSpace space) {
  const ComplexMatrix a = annihilation(space).matrix;
  const ComplexMatrix ad = a.adjoint();
  const ComplexMatrix n = number(space).matrix;
  const Eigen::Index k = interior_size(space);
  const ComplexMatrix esa = expm(s * a);
  const ComplexMatrix etn = expm(t * n);
  return {
      interior_distance(esa * expm(t * ad), std::exp(s * t) * expm(t * ad) * esa, k),
      interior_distance(esa * etn, etn * expm(s * std::exp(t) * a), k),
      interior_distance(etn * expm(s * ad), expm(s * std::exp(t) * ad) * etn, k),
  };
}

inline constexpr Eigen::Index kSuperoperatorPadding = 20;

/// Compares exp(t{nu K+ + mu K- - (mu + nu) K3}) with
/// exp(G K+) exp(-2 log F K3) exp(E K-) on the D^2-dimensional space of
/// `params`, over the block where both tensor factors are below D - 1.
/// The factored side is built at dimension D: its triangular and diagonal
/// factors restrict exactly. The single exponential is built on D + padding
/// levels and then restricted, because exponentiating the truncated
/// generator drops every path through levels >= D.
inline double superoperator_disentangle_check(const ModelParams& params, double t,
                                              Eigen::Index padding = kSuperoperatorPadding) {
  detail::check_time(t, "superoperator_disentangle_check");
  const Eigen::Index d = params.dim();
  const Eigen::Index big = d + std::max<Eigen::Index>(padding, 0);
  const double mu = params.mu();
  const double nu = params.nu();
  const EFGCoefficients c = efg(params, t);

  const SuperGenerators k = super_generators(params.space());
  const ComplexMatrix factored =
      expm(c.g_val * k.k_plus) * expm(-2.0 * c.log_f * k.k3) * expm(c.e_val * k.k_minus);

  const SuperGenerators kb = super_generators(FockSpace(big));
  const ComplexMatrix single =
      detail::sector_expm(t * (nu * kb.k_plus + mu * kb.k_minus - (mu + nu) * kb.k3), big);

  double sum = 0.0;
  for (Eigen::Index i = 0; i < d * d; ++i) {
    const Eigen::Index i1 = i / d;
    const Eigen::Index i2 = i % d;
    if (i1 >= d - 1 || i2 >= d - 1) continue;
    for (Eigen::Index j = 0; j < d * d; ++j) {
      const Eigen::Index j1 = j / d;
      const Eigen::Index j2 = j % d;
      if (j1 >= d - 1 || j2 >= d - 1) continue;
      sum += std::norm(single(i1 * big + i2, j1 * big + j2) - factored(i, j));
    }
  }
  return std::sqrt(sum);
}

/// Classical damped oscillator x'' + gamma x' + omega^2 x = 0 (underdamped).
class ClassicalParams {
 public:
  ClassicalParams(double omega, double gamma, cplx alpha) : omega_(omega), gamma_(gamma), alpha_(alpha) {
    if (!std::isfinite(omega) || !std::isfinite(gamma) || !(gamma >= 0.0)) {
      throw ConfigError("ClassicalParams: omega and gamma must be finite with gamma >= 0");
    }
    if (!(omega > 0.5 * gamma)) {
      throw ConfigError("ClassicalParams: requires omega > gamma/2, got omega=" + std::to_string(omega) +
                        " gamma=" + std::to_string(gamma));
    }
  }
  [[nodiscard]] double omega() const { return omega_; }
  [[nodiscard]] double gamma() const { return gamma_; }
  [[nodiscard]] cplx alpha() const { return alpha_; }
  /// sqrt(omega^2 - (gamma/2)^2)
  [[nodiscard]] double damped_frequency() const {
    return omega_ * std::sqrt(1.0 - (0.5 * gamma_ / omega_) * (0.5 * gamma_ / omega_));
  }

 private:
  double omega_;
  double gamma_;
  cplx alpha_;
};

/// x(t) = alpha e^{-(gamma/2 + i Omega) t} + conj(alpha) e^{-(gamma/2 - i Omega) t}.
inline double classical_trajectory(const ClassicalParams& cp, double t) {
  detail::check_time(t, "classical_trajectory");
  return 2.0 * (cp.alpha() * std::exp(-cplx(0.5 * cp.gamma(), cp.damped_frequency()) * t)).real();
}

/// Same with Omega replaced by omega, valid for small gamma / (2 omega).
inline double classical_approximation(const ClassicalParams& cp, double t) {
  detail::check_time(t, "classical_approximation");
  return 2.0 * (cp.alpha() * std::exp(-cplx(0.5 * cp.gamma(), cp.omega()) * t)).real();
}

}  // namespace qdho
