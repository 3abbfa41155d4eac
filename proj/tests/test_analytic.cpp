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

#include <array>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "qdho/analytic.hpp"
#include "qdho/invariants.hpp"
#include "qdho/observables.hpp"

namespace qdho {
namespace {

// Oracle: the hyperbolic forms in extended precision.
struct Hyperbolic {
  long double e, f, g;
};

Hyperbolic hyperbolic_efg(long double mu, long double nu, long double t) {
  const long double x = 0.5L * (mu - nu) * t;
  const long double f = std::cosh(x) + (mu + nu) / (mu - nu) * std::sinh(x);
  return {2.0L * mu / (mu - nu) * std::sinh(x) / f, f, 2.0L * nu / (mu - nu) * std::sinh(x) / f};
}

// Oracle: RK4 integration of f' = mu f^2 - (mu + nu) f + nu, g' = 2 mu f - (mu + nu),
// h' = mu e^g from zero, with G = f, F = e^{-g/2}, E = h.
Hyperbolic riccati_efg(double mu, double nu, double t) {
  auto rhs = [&](const std::array<double, 3>& y) {
    return std::array<double, 3>{mu * y[0] * y[0] - (mu + nu) * y[0] + nu, 2.0 * mu * y[0] - (mu + nu),
                                 mu * std::exp(y[1])};
  };
  std::array<double, 3> y{0.0, 0.0, 0.0};
  const int steps = 20000;
  const double h = t / steps;
  for (int k = 0; k < steps; ++k) {
    auto shifted = [&](const std::array<double, 3>& d, double s) {
      return std::array<double, 3>{y[0] + s * d[0], y[1] + s * d[1], y[2] + s * d[2]};
    };
    const auto k1 = rhs(y);
    const auto k2 = rhs(shifted(k1, 0.5 * h));
    const auto k3 = rhs(shifted(k2, 0.5 * h));
    const auto k4 = rhs(shifted(k3, h));
    for (int i = 0; i < 3; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return {y[2], std::exp(-0.5 * y[1]), y[0]};
}

ModelParams params(double omega, double mu, double nu, Eigen::Index d = 4) {
  return ModelParams(omega, mu, nu, FockSpace(d));
}

TEST(Efg, TimeZero) {
  const EFGCoefficients c = efg(params(1.0, 2.0, 1.0), 0.0);
  EXPECT_EQ(c.e_val, 0.0);
  EXPECT_EQ(c.f_val, 1.0);
  EXPECT_EQ(c.g_val, 0.0);
}

TEST(Efg, FrozenValues) {
  const EFGCoefficients c = efg(params(1.0, 2.0, 1.0), 1.0);
  EXPECT_NEAR(c.e_val, 0.77460032643943592103, 1e-14);
  EXPECT_NEAR(c.f_val, 2.6909118816876228701, 1e-14);
  EXPECT_NEAR(c.g_val, 0.38730016321971796052, 1e-14);
  const EFGCoefficients d = efg(params(1.0, 0.4, 0.1), 5.0);
  EXPECT_NEAR(d.e_val, 0.82276580638754648536, 1e-14);
  EXPECT_NEAR(d.f_val, 2.6652111712365613223, 1e-14);
  EXPECT_NEAR(d.g_val, 0.20569145159688662134, 1e-14);
}

TEST(Efg, NoPumpingCorollary) {
  const EFGCoefficients c = efg(params(1.0, 1.0, 0.0), std::log(2.0));
  EXPECT_NEAR(c.e_val, 0.5, 1e-15);
  EXPECT_NEAR(c.f_val, std::sqrt(2.0), 1e-15);
  EXPECT_EQ(c.g_val, 0.0);
}

TEST(Efg, MatchesHyperbolicForms) {
  for (auto [mu, nu] : std::vector<std::pair<double, double>>{{2.0, 1.0}, {0.4, 0.1}, {1.0, 0.0}, {3.0, 2.9}}) {
    for (double t : {1e-6, 0.01, 0.5, 1.0, 7.0, 30.0}) {
      const EFGCoefficients c = efg(params(1.0, mu, nu), t);
      const Hyperbolic h = hyperbolic_efg(mu, nu, t);
      EXPECT_NEAR(c.e_val, static_cast<double>(h.e), 1e-13) << mu << " " << nu << " " << t;
      EXPECT_NEAR(c.g_val, static_cast<double>(h.g), 1e-13);
      EXPECT_NEAR(c.f_val / static_cast<double>(h.f), 1.0, 1e-13);
    }
  }
}

TEST(Efg, MatchesRiccatiIntegration) {
  for (auto [mu, nu, t] : std::vector<std::array<double, 3>>{{2.0, 1.0, 1.0}, {0.4, 0.1, 5.0}, {0.5, 0.0, 2.0}}) {
    const EFGCoefficients c = efg(params(1.0, mu, nu), t);
    const Hyperbolic r = riccati_efg(mu, nu, t);
    EXPECT_NEAR(c.e_val, static_cast<double>(r.e), 1e-11);
    EXPECT_NEAR(c.f_val, static_cast<double>(r.f), 1e-11);
    EXPECT_NEAR(c.g_val, static_cast<double>(r.g), 1e-11);
  }
}

TEST(Efg, Bounds) {
  for (auto [mu, nu] : std::vector<std::pair<double, double>>{{2.0, 1.0}, {0.4, 0.1}, {1.0, 0.0}}) {
    for (double t = 0.0; t <= 200.0; t += 0.37) {
      const EFGCoefficients c = efg(params(1.0, mu, nu), t);
      EXPECT_GE(c.f_val, 1.0);
      EXPECT_GE(c.g_val, 0.0);
      EXPECT_LT(c.g_val, nu / mu + 1e-15);
      EXPECT_GE(c.e_val, 0.0);
      EXPECT_LT(c.e_val, 2.0 * mu / (mu + nu));
    }
  }
}

TEST(Efg, InternalIdentities) {
  for (auto [mu, nu] : std::vector<std::pair<double, double>>{{2.0, 1.0}, {0.4, 0.1}, {1.0, 0.0}}) {
    for (double t : {0.0, 0.1, 1.0, 5.0, 40.0}) {
      const EFGCoefficients c = efg(params(1.0, mu, nu), t);
      const double grow = std::exp(0.5 * (mu - nu) * t);
      EXPECT_NEAR(c.g_val - 1.0, -grow / c.f_val, 1e-12 * std::max(1.0, grow / c.f_val));
      EXPECT_NEAR(c.e_val - 1.0, -1.0 / (grow * c.f_val), 1e-12);
      EXPECT_NEAR(1.0 / (c.f_val * (c.g_val - 1.0)), -1.0 / grow, 1e-12);
      EXPECT_NEAR(c.growth_over_f, grow / c.f_val, 1e-12);
    }
  }
}

TEST(Efg, LongHorizonStaysFiniteThenReportsOverflow) {
  const ModelParams p = params(1.0, 0.4, 0.1);
  const EFGCoefficients c = efg(p, 1000.0);
  EXPECT_NEAR(c.g_val, 0.25, 1e-15);
  EXPECT_NEAR(c.e_val, 1.0, 1e-15);
  EXPECT_TRUE(std::isfinite(c.f_val));
  EXPECT_THROW(efg(p, 1e4), NumericError);
  EXPECT_THROW(efg(p, -1.0), ConfigError);
}

TEST(TwoByTwo, IdentityAtZero) {
  EXPECT_EQ(two_by_two_exponential(params(1.0, 2.0, 1.0), 0.0), identity(2));
}

TEST(TwoByTwo, MatchesExpm) {
  const ModelParams p = params(1.0, 2.0, 1.0);
  const ComplexMatrix m = two_by_two_exponential(p, 0.7);
  EXPECT_LE(max_abs(m - expm(0.7 * two_by_two_generator(p))), 1e-12);
  EXPECT_NEAR(std::abs(m.determinant() - 1.0), 0.0, 1e-12);
}

TEST(TwoByTwo, GeneratorIsLinearCombination) {
  const ModelParams p = params(1.0, 0.4, 0.1);
  const Sl2Generators k = sl2_generators();
  const ComplexMatrix built = p.nu() * k.k_plus + p.mu() * k.k_minus - (p.mu() + p.nu()) * k.k3;
  EXPECT_EQ(built, two_by_two_generator(p));
  EXPECT_EQ(commutator(k.k3, k.k_plus), k.k_plus);
  EXPECT_EQ(commutator(k.k3, k.k_minus), ComplexMatrix(-k.k_minus));
  EXPECT_EQ(commutator(k.k_plus, k.k_minus), ComplexMatrix(-2.0 * k.k3));
}

TEST(Gauss, IdentityFactors) {
  const GaussFactors f = gauss_decompose(identity(2));
  EXPECT_EQ(f.upper, identity(2));
  EXPECT_EQ(f.diagonal, identity(2));
  EXPECT_EQ(f.lower, identity(2));
}

TEST(Gauss, FactorsOfEvolutionAreCoefficients) {
  const ModelParams p = params(1.0, 2.0, 1.0);
  const GaussFactors f = gauss_decompose(two_by_two_exponential(p, 1.0));
  const EFGCoefficients c = efg(p, 1.0);
  EXPECT_NEAR(std::abs(f.upper(0, 1) - c.g_val), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(f.lower(1, 0) + c.e_val), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(f.diagonal(1, 1) - c.f_val), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(f.diagonal(0, 0) - 1.0 / c.f_val), 0.0, 1e-12);
}

TEST(Gauss, RandomRoundTrip) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    ComplexMatrix m = random_matrix(2, 2, rng);
    m /= std::sqrt(m.determinant());
    const GaussFactors f = gauss_decompose(m);
    EXPECT_LE(max_abs(f.upper * f.diagonal * f.lower - m), 1e-12 * std::max(1.0, max_abs(m)));
    EXPECT_EQ(f.upper(0, 0), cplx(1.0));
    EXPECT_EQ(f.upper(1, 0), cplx(0.0));
    EXPECT_EQ(f.lower(0, 1), cplx(0.0));
  }
}

TEST(Gauss, Errors) {
  ComplexMatrix singular(2, 2);
  singular << 0, 1, -1, 0;
  EXPECT_THROW(gauss_decompose(singular), NumericError);
  EXPECT_THROW(gauss_decompose(2.0 * identity(2)), Error);
  EXPECT_THROW(gauss_decompose(identity(3)), DimensionError);
}

TEST(Riccati, ResidualSmall) {
  EXPECT_LE(riccati_residual(params(1.0, 2.0, 1.0), 1.0), 1e-7);
  EXPECT_LE(riccati_residual(params(1.0, 0.4, 0.1), 5.0), 1e-7);
  EXPECT_LE(riccati_residual(params(1.0, 0.4, 0.1), 0.5), 1e-7);
}

TEST(Riccati, SensitiveToPerturbation) {
  EXPECT_GE(riccati_residuals(params(1.0, 2.0, 1.0), 1.0, 0.01)[0], 1e-3);
}

class Standard : public ::testing::Test {
 protected:
  const FockSpace space{20};
  const ModelParams model{1.0, 0.4, 0.1, space};
  const DensityMatrix rho0 = density_from_pure(coherent_state(space, 1.0));
};

TEST_F(Standard, GeneralAtZeroIsExact) {
  EXPECT_EQ(general_solution(model, rho0, 0.0).matrix(), rho0.matrix());
}

TEST_F(Standard, GeneralMatchesExpm) {
  const Liouvillian l = build_liouvillian(model);
  for (double t : {0.5, 1.0, 2.0, 5.0}) {
    const ComplexMatrix ref = propagate_expm(l, rho0, t).matrix();
    EXPECT_LE((general_solution(model, rho0, t).matrix() - ref).norm(), 1e-6) << "t=" << t;
  }
}

TEST_F(Standard, GeneralTraceAndPositivity) {
  for (double t : {0.5, 2.0, 5.0}) {
    const DensityMatrix rho = general_solution(model, rho0, t);
    EXPECT_LE(std::abs(rho.matrix().trace() - 1.0), 1e-7);
    EXPECT_LE(hermiticity_error(rho.matrix()), 1e-9);
    EXPECT_GE(hermitian_eigenvalues(rho.matrix()).front(), -1e-7);
  }
}

TEST(General, SqueezedInitialState) {
  const FockSpace s(40);
  const ModelParams p(1.0, 0.4, 0.1, s);
  const DensityMatrix rho0 = density_from_pure(squeezed_state(s, 0.2));
  const ComplexMatrix ref = propagate_expm(p, rho0, 1.0).matrix();
  EXPECT_LE((general_solution(p, rho0, 1.0).matrix() - ref).norm(), 1e-6);
}

TEST(Vacuum, Cases) {
  const ModelParams p(1.0, 2.0, 1.0, FockSpace(30));
  ComplexMatrix ground = ComplexMatrix::Zero(30, 30);
  ground(0, 0) = 1.0;
  EXPECT_EQ(vacuum_solution(p, 0.0).matrix(), ground);
  const DensityMatrix rho0(p.space(), ground);
  EXPECT_LE((vacuum_solution(p, 1.0).matrix() - general_solution(p, rho0, 1.0).matrix()).norm(), 1e-10);
  const ModelParams cold(1.0, 2.0, 0.0, FockSpace(30));
  EXPECT_EQ(vacuum_solution(cold, 3.0).matrix(), ground);
}

TEST(Vacuum, SteadyState) {
  const ModelParams p(1.0, 0.4, 0.1, FockSpace(30));
  const ComplexMatrix rho = vacuum_solution(p, 60.0).matrix();
  double mean_n = 0.0;
  for (Eigen::Index n = 0; n < 30; ++n) mean_n += static_cast<double>(n) * rho(n, n).real();
  EXPECT_NEAR(mean_n, 1.0 / 3.0, 1e-6);
  for (Eigen::Index n = 0; n + 1 < 30; ++n) EXPECT_NEAR(rho(n + 1, n + 1).real() / rho(n, n).real(), 0.25, 1e-8);
  EXPECT_LE(vacuum_trace_deficit(p, 60.0), std::pow(0.25, 30) * 1.0000001);
  EXPECT_NEAR(rho.trace().real() + vacuum_trace_deficit(p, 60.0), 1.0, 1e-15);
}

TEST(Vacuum, PurityDecreases) {
  const ModelParams p(1.0, 0.4, 0.1, FockSpace(30));
  double last = 1.0;
  for (double t = 0.25; t <= 20.0; t += 0.25) {
    const double purity = observe(vacuum_solution(p, t)).purity;
    EXPECT_LT(purity, last) << "t=" << t;
    last = purity;
  }
}

TEST(Coherent, ZeroAmplitudeIsVacuum) {
  const ModelParams p(1.0, 0.4, 0.1, FockSpace(20));
  EXPECT_LE((coherent_solution(p, 0.0, 1.5).matrix() - vacuum_solution(p, 1.5).matrix()).norm(), 1e-12);
}

TEST(Coherent, MatchesGeneralAndEnvelope) {
  const FockSpace s(30);
  const ModelParams p(1.0, 0.4, 0.1, s);
  const DensityMatrix rho0 = density_from_pure(coherent_state(s, 1.0));
  for (double t : {0.5, 1.0, 2.0}) {
    const DensityMatrix closed = coherent_solution(p, 1.0, t);
    EXPECT_LE((closed.matrix() - general_solution(p, rho0, t).matrix()).norm(), 1e-6) << "t=" << t;
    EXPECT_LE(std::abs(observe(closed).mean_a - coherent_envelope(p, 1.0, t)), 1e-6);
  }
  EXPECT_EQ(coherent_solution(p, 1.0, 0.0).matrix(), rho0.matrix());
}

TEST(Coherent, NoPumpingRoutesToCorollary) {
  const FockSpace s(20);
  const ModelParams p(1.0, 0.5, 0.0, s);
  const DensityMatrix rho0 = density_from_pure(coherent_state(s, 0.8));
  EXPECT_EQ(coherent_solution(p, 0.8, 1.0).matrix(), nu_zero_solution(p, rho0, 1.0).matrix());
}

TEST(Coherent, TruncationGate) {
  EXPECT_THROW(coherent_solution(ModelParams(1.0, 0.4, 0.1, FockSpace(6)), 2.0, 1.0), TruncationError);
}

// Least-squares slope of log|<a>(t)| over t in [0, 3].
double fitted_decay_rate(const ModelParams& p, cplx alpha) {
  const int samples = 31;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 0; k < samples; ++k) {
    const double t = 3.0 * k / (samples - 1);
    const double y = std::log(std::abs(observe(coherent_solution(p, alpha, t)).mean_a));
    sx += t;
    sy += y;
    sxx += t * t;
    sxy += t * y;
  }
  return -(samples * sxy - sx * sy) / (samples * sxx - sx * sx);
}

TEST(Coherent, DecayRateOfMeanAmplitude) {
  struct Case {
    double omega, mu, nu;
    cplx alpha;
  };
  for (const Case& c : {Case{1.0, 0.4, 0.1, 1.0}, Case{2.0, 1.0, 0.3, cplx(0.3, -0.7)},
                        Case{0.5, 0.8, 0.0, cplx(0.0, 1.2)}}) {
    const ModelParams p(c.omega, c.mu, c.nu, FockSpace(30));
    const double expected = 0.5 * (c.mu - c.nu);
    EXPECT_NEAR(fitted_decay_rate(p, c.alpha) / expected, 1.0, 1e-4);
  }
}

TEST(NuZero, Cases) {
  const FockSpace s(20);
  const ModelParams p(1.0, 0.5, 0.0, s);
  const DensityMatrix rho0 = density_from_pure(coherent_state(s, 0.8));
  EXPECT_EQ(nu_zero_solution(p, rho0, 0.0).matrix(), rho0.matrix());
  EXPECT_LE((nu_zero_solution(p, rho0, 1.0).matrix() - general_solution(p, rho0, 1.0).matrix()).norm(), 1e-10);
  EXPECT_THROW(nu_zero_solution(ModelParams(1.0, 0.5, 0.1, s), rho0, 1.0), ConfigError);
}

TEST(NuZero, SingleExcitation) {
  const double mu = 0.5, t = 1.3;
  const FockSpace s(6);
  const ModelParams p(1.0, mu, 0.0, s);
  const ComplexMatrix rho = nu_zero_solution(p, density_from_pure(fock_state(s, 1)), t).matrix();
  ComplexMatrix expected = ComplexMatrix::Zero(6, 6);
  expected(0, 0) = 1.0 - std::exp(-mu * t);
  expected(1, 1) = std::exp(-mu * t);
  EXPECT_LE(max_abs(rho - expected), 1e-15);
}

TEST(Disentangle, TrivialAndGenericCases) {
  EXPECT_LE(disentangle_check(0.0, 0.0, cplx(0.5, 0.1), FockSpace(12)).max(), 1e-12);
  const DisentangleReport r = disentangle_check(0.3, -0.2, cplx(0.5, 0.1), FockSpace(40));
  EXPECT_LE(r.formula1, 1e-8);
  EXPECT_LE(r.formula2, 1e-8);
  EXPECT_THROW(disentangle_check(0.3, -0.2, 0.0, FockSpace(40)), ConfigError);
}

TEST(Disentangle, CommutationShuffles) {
  for (double d : commutation_shuffle_check(0.2, 0.3, FockSpace(40))) EXPECT_LE(d, 1e-8);
}

TEST(Disentangle, SuperoperatorIdentity) {
  const ModelParams p(0.0, 2.0, 1.0, FockSpace(12));
  EXPECT_LE(superoperator_disentangle_check(p, 0.5), 1e-7);
}

TEST(Classical, UndampedLimit) {
  const ClassicalParams cp(1.0, 1e-12, 0.5);
  for (double t = 0.0; t <= 10.0; t += 0.5) EXPECT_NEAR(classical_trajectory(cp, t), std::cos(t), 1e-11);
}

TEST(Classical, InitialValue) {
  const ClassicalParams cp(1.3, 0.4, cplx(0.7, -0.2));
  EXPECT_EQ(classical_trajectory(cp, 0.0), 1.4);
}

TEST(Classical, ApproximationCloseForLightDamping) {
  const ClassicalParams cp(1.0, 0.1, 0.5);
  double worst = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double t = 10.0 * k / 1000;
    worst = std::max(worst, std::abs(classical_trajectory(cp, t) - classical_approximation(cp, t)));
  }
  EXPECT_LE(worst, 0.02);
}

TEST(Classical, SolvesOscillatorEquation) {
  const ClassicalParams cp(1.0, 0.3, cplx(0.4, 0.1));
  const double h = 1e-4;
  for (double t = 0.5; t <= 9.5; t += 0.5) {
    const double x = classical_trajectory(cp, t);
    const double xp = classical_trajectory(cp, t + h), xm = classical_trajectory(cp, t - h);
    const double residual = (xp - 2.0 * x + xm) / (h * h) + cp.gamma() * (xp - xm) / (2.0 * h) + x;
    EXPECT_LE(std::abs(residual), 1e-6);
  }
}

TEST(Classical, Overdamped) {
  EXPECT_THROW(ClassicalParams(1.0, 1.9 * 1.1, 0.5), ConfigError);
  EXPECT_THROW(ClassicalParams(1.0, 2.0, 0.5), ConfigError);
  EXPECT_THROW(ClassicalParams(1.0, -0.1, 0.5), ConfigError);
  EXPECT_NO_THROW(ClassicalParams(1.0, 1.9, 0.5));
}

}  // namespace
}  // namespace qdho
