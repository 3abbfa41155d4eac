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

// Named algebraic invariants with measured discrepancies, run by `qdho check`.
// Random inputs come from a seeded generator; each invariant draws from its
// own stream so results do not depend on which others run.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qdho/analytic.hpp"
#include "qdho/fock.hpp"
#include "qdho/lindblad.hpp"
#include "qdho/linalg.hpp"

namespace qdho {

using Rng = std::mt19937_64;

inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = cplx(u(rng), u(rng));
  return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  const ComplexMatrix m = random_matrix(n, n, rng);
  return 0.5 * (m + m.adjoint());
}

inline cplx random_complex(double radius, Rng& rng) {
  std::uniform_real_distribution<double> r(0.0, radius);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  return std::polar(r(rng), phase(rng));
}

struct Invariant {
  std::string name;
  double tolerance;
  std::function<double(Rng&)> measure;
};

struct InvariantResult {
  std::string name;
  double measured;
  double tolerance;
  [[nodiscard]] bool passed() const { return std::isfinite(measured) && measured <= tolerance; }
};

namespace detail {

inline double relative_max(const ComplexMatrix& x, const ComplexMatrix& ref) {
  const double scale = std::max(max_abs(ref), 1e-300);
  return max_abs(x - ref) / scale;
}

inline double relative_frobenius(const ComplexMatrix& x, const ComplexMatrix& ref) {
  return (x - ref).norm() / std::max(ref.norm(), 1e-300);
}

inline Eigen::Index uniform_index(Eigen::Index lo, Eigen::Index hi, Rng& rng) {
  return std::uniform_int_distribution<Eigen::Index>(lo, hi)(rng);
}

// Restricts a D^2 x D^2 superoperator to indices whose tensor factors are both < D - 1.
inline ComplexMatrix interior_superblock(const ComplexMatrix& x, Eigen::Index d) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < d * d; ++i)
    if (i / d < d - 1 && i % d < d - 1) keep.push_back(i);
  const auto n = static_cast<Eigen::Index>(keep.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) out(r, c) = x(keep[r], keep[c]);
  return out;
}

}  // namespace detail

inline std::vector<Invariant> invariant_suite() {
  using detail::relative_frobenius;
  using detail::relative_max;
  using detail::uniform_index;
  std::vector<Invariant> suite;

  suite.push_back({"kron_mixed_product", 1e-12, [](Rng& rng) {
                     const Eigen::Index n = uniform_index(2, 6, rng);
                     const Eigen::Index m = uniform_index(2, 6, rng);
                     const ComplexMatrix a1 = random_matrix(n, n, rng), a2 = random_matrix(n, n, rng);
                     const ComplexMatrix b1 = random_matrix(m, m, rng), b2 = random_matrix(m, m, rng);
                     return relative_max(kron(a1, b1) * kron(a2, b2), kron(a1 * a2, b1 * b2));
                   }});
  suite.push_back({"kron_identity_factors", 1e-12, [](Rng& rng) {
                     const Eigen::Index n = uniform_index(2, 6, rng);
                     const ComplexMatrix a = random_matrix(n, n, rng), b = random_matrix(n, n, rng);
                     const ComplexMatrix e = identity(n);
                     const ComplexMatrix ab = kron(a, b);
                     return std::max(relative_max(kron(a, e) * kron(e, b), ab),
                                     relative_max(kron(e, b) * kron(a, e), ab));
                   }});
  suite.push_back({"kron_expm_sum", 1e-10, [](Rng& rng) {
                     const ComplexMatrix a = random_matrix(3, 3, rng), b = random_matrix(3, 3, rng);
                     const ComplexMatrix e = identity(3);
                     return relative_frobenius(expm(kron(a, e) + kron(e, b)), kron(expm(a), expm(b)));
                   }});
  suite.push_back({"kron_adjoint", 1e-14, [](Rng& rng) {
                     const ComplexMatrix a = random_matrix(uniform_index(2, 6, rng), uniform_index(2, 6, rng), rng);
                     const ComplexMatrix b = random_matrix(uniform_index(2, 6, rng), uniform_index(2, 6, rng), rng);
                     return relative_max(adjoint(kron(a, b)), kron(adjoint(a), adjoint(b)));
                   }});
  suite.push_back({"vectorize_axb", 1e-12, [](Rng& rng) {
                     const ComplexMatrix a = random_matrix(3, 3, rng), b = random_matrix(3, 3, rng),
                                         x = random_matrix(3, 3, rng);
                     const ComplexMatrix lhs = vectorize(a * x * b).entries();
                     const ComplexMatrix rhs = kron(a, b.transpose()) * vectorize(x).entries();
                     return relative_max(lhs, rhs);
                   }});
  suite.push_back({"vectorize_ax_plus_xb", 1e-12, [](Rng& rng) {
                     const ComplexMatrix a = random_matrix(3, 3, rng), b = random_matrix(3, 3, rng),
                                         x = random_matrix(3, 3, rng);
                     const ComplexMatrix e = identity(3);
                     const ComplexMatrix lhs = vectorize(a * x + x * b).entries();
                     const ComplexMatrix rhs = (kron(a, e) + kron(e, b.transpose())) * vectorize(x).entries();
                     return relative_max(lhs, rhs);
                   }});
  suite.push_back({"heisenberg_number_relations", 1e-12, [](Rng& rng) {
                     const FockSpace s(uniform_index(3, 24, rng));
                     const ComplexMatrix a = annihilation(s).matrix, ad = creation(s).matrix, n = number(s).matrix;
                     return std::max(max_abs(commutator(n, ad) - ad), max_abs(commutator(n, a) + a));
                   }});
  suite.push_back({"canonical_commutator_interior", 1e-12, [](Rng& rng) {
                     const Eigen::Index d = uniform_index(3, 24, rng);
                     const FockSpace s(d);
                     const ComplexMatrix c = commutator(annihilation(s).matrix, creation(s).matrix);
                     const double inner = max_abs(leading_block(c, d - 1) - identity(d - 1));
                     const double corner = std::abs(c(d - 1, d - 1) - static_cast<double>(1 - d));
                     return std::max(inner, corner);
                   }});
  suite.push_back({"su11_two_by_two", 0.0, [](Rng&) {
                     const Sl2Generators k = sl2_generators();
                     return std::max({max_abs(commutator(k.k3, k.k_plus) - k.k_plus),
                                      max_abs(commutator(k.k3, k.k_minus) + k.k_minus),
                                      max_abs(commutator(k.k_plus, k.k_minus) + 2.0 * k.k3)});
                   }});
  suite.push_back({"su11_superoperators_interior", 1e-10, [](Rng& rng) {
                     const Eigen::Index d = uniform_index(3, 8, rng);
                     const SuperGenerators k = super_generators(FockSpace(d));
                     auto in = [d](const ComplexMatrix& x) { return detail::interior_superblock(x, d); };
                     return std::max({max_abs(in(commutator(k.k3, k.k_plus) - k.k_plus)),
                                      max_abs(in(commutator(k.k3, k.k_minus) + k.k_minus)),
                                      max_abs(in(commutator(k.k_plus, k.k_minus) + 2.0 * k.k3))});
                   }});
  suite.push_back({"k0_central", 1e-10, [](Rng& rng) {
                     const Eigen::Index d = uniform_index(3, 8, rng);
                     const SuperGenerators k = super_generators(FockSpace(d));
                     auto in = [d](const ComplexMatrix& x) { return detail::interior_superblock(x, d); };
                     return std::max({max_abs(in(commutator(k.k0, k.k_plus))), max_abs(in(commutator(k.k0, k.k3))),
                                      max_abs(in(commutator(k.k0, k.k_minus)))});
                   }});
  suite.push_back({"bch_displacement", 1e-8, [](Rng& rng) {
                     const FockSpace s(uniform_index(30, 40, rng));
                     const cplx alpha = random_complex(1.0, rng);
                     const ComplexMatrix a = annihilation(s).matrix, ad = creation(s).matrix;
                     const ComplexMatrix lhs = expm(alpha * ad - std::conj(alpha) * a);
                     const ComplexMatrix rhs =
                         std::exp(-0.5 * std::norm(alpha)) * expm(alpha * ad) * expm(-std::conj(alpha) * a);
                     return interior_distance(lhs, rhs, interior_size(s));
                   }});
  suite.push_back({"coherent_eigenvector", 1e-8, [](Rng& rng) {
                     const FockSpace s(30);
                     const cplx alpha = random_complex(1.0, rng);
                     const ComplexVector psi = coherent_state(s, alpha).amplitudes;
                     return (annihilation(s).matrix * psi - alpha * psi).norm();
                   }});
  suite.push_back({"coherent_displacement_equivalence", 1e-8, [](Rng& rng) {
                     const FockSpace s(30);
                     const cplx alpha = random_complex(1.0, rng);
                     return (coherent_state(s, alpha).amplitudes - coherent_state_via_displacement(s, alpha).amplitudes)
                         .norm();
                   }});
  suite.push_back({"disentangling_formula", 1e-8, [](Rng& rng) {
                     const cplx alpha = random_complex(0.5, rng), beta = random_complex(0.5, rng);
                     std::uniform_real_distribution<double> u(-0.5, 0.5);
                     cplx gamma(u(rng), u(rng));
                     if (std::abs(gamma) < 1e-3) gamma = 0.25;
                     return disentangle_check(alpha, beta, gamma, FockSpace(40)).max();
                   }});
  suite.push_back({"commutation_shuffles", 1e-8, [](Rng& rng) {
                     const cplx s = random_complex(0.5, rng), t = random_complex(0.5, rng);
                     const auto r = commutation_shuffle_check(s, t, FockSpace(40));
                     return *std::max_element(r.begin(), r.end());
                   }});
  suite.push_back({"superoperator_disentangling", 1e-7, [](Rng&) {
                     return superoperator_disentangle_check(ModelParams(0.0, 2.0, 1.0, FockSpace(12)), 1.0);
                   }});
  suite.push_back({"riccati_residual", 1e-7, [](Rng& rng) {
                     double worst = 0.0;
                     for (double t : {0.5, 1.0, 5.0}) {
                       worst = std::max(worst, riccati_residual(ModelParams(0.0, 2.0, 1.0, FockSpace(2)), t));
                       worst = std::max(worst, riccati_residual(ModelParams(0.0, 0.4, 0.1, FockSpace(2)), t));
                     }
                     std::uniform_real_distribution<double> rate(0.1, 1.0);
                     const double mu = rate(rng);
                     const double nu = mu * std::uniform_real_distribution<double>(0.0, 0.9)(rng);
                     const double t = std::uniform_real_distribution<double>(0.1, 3.0)(rng);
                     return std::max(worst, riccati_residual(ModelParams(0.0, mu, nu, FockSpace(2)), t));
                   }});
  suite.push_back({"gauss_round_trip", 1e-12, [](Rng& rng) {
                     ComplexMatrix m = random_matrix(2, 2, rng);
                     m /= std::sqrt(m.determinant());
                     if (std::abs(m(1, 1)) < 0.1) {
                       m(1, 1) += 0.5;
                       m /= std::sqrt(m.determinant());
                     }
                     const GaussFactors g = gauss_decompose(m);
                     return relative_max(g.upper * g.diagonal * g.lower, m);
                   }});
  suite.push_back({"gauss_factors_match_efg", 1e-12, [](Rng& rng) {
                     const double mu = std::uniform_real_distribution<double>(0.2, 2.0)(rng);
                     const double nu = mu * std::uniform_real_distribution<double>(0.0, 0.9)(rng);
                     const double t = std::uniform_real_distribution<double>(0.1, 2.0)(rng);
                     const ModelParams p(0.0, mu, nu, FockSpace(2));
                     const GaussFactors g = gauss_decompose(two_by_two_exponential(p, t));
                     const EFGCoefficients c = efg(p, t);
                     return std::max({std::abs(g.upper(0, 1) - c.g_val), std::abs(g.lower(1, 0) + c.e_val),
                                      std::abs(g.diagonal(1, 1) - c.f_val) / c.f_val});
                   }});
  suite.push_back({"two_by_two_exponential", 1e-12, [](Rng& rng) {
                     const double mu = std::uniform_real_distribution<double>(0.2, 2.0)(rng);
                     const double nu = mu * std::uniform_real_distribution<double>(0.0, 0.9)(rng);
                     const double t = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
                     const ModelParams p(0.0, mu, nu, FockSpace(2));
                     const ComplexMatrix closed = two_by_two_exponential(p, t);
                     return std::max(relative_max(closed, expm(t * two_by_two_generator(p))),
                                     std::abs(closed.determinant() - 1.0));
                   }});
  suite.push_back({"efg_identities", 1e-12, [](Rng& rng) {
                     const double mu = std::uniform_real_distribution<double>(0.2, 2.0)(rng);
                     const double nu = mu * std::uniform_real_distribution<double>(0.0, 0.9)(rng);
                     const double t = std::uniform_real_distribution<double>(0.0, 5.0)(rng);
                     const EFGCoefficients c = efg(ModelParams(0.0, mu, nu, FockSpace(2)), t);
                     const double decay = std::exp(-0.5 * (mu - nu) * t);
                     return std::max({std::abs(c.g_val - 1.0 + 1.0 / (decay * c.f_val)),
                                      std::abs(c.e_val - 1.0 + decay / c.f_val),
                                      std::abs(1.0 / (c.f_val * (c.g_val - 1.0)) + decay)});
                   }});
  return suite;
}

inline std::vector<InvariantResult> run_invariants(std::uint64_t seed) {
  std::vector<InvariantResult> out;
  const auto suite = invariant_suite();
  for (std::size_t i = 0; i < suite.size(); ++i) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(i)};
    Rng rng(seq);
    double measured;
    try {
      measured = suite[i].measure(rng);
    } catch (const std::exception&) {
      measured = std::numeric_limits<double>::infinity();
    }
    out.push_back({suite[i].name, measured, suite[i].tolerance});
  }
  return out;
}

}  // namespace qdho
