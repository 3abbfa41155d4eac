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

#include <optional>

#include "qdho/fock.hpp"
#include "qdho/linalg.hpp"

namespace qdho {

struct ObservableRecord {
  double t = 0.0;
  double trace_re = 0.0;
  double trace_drift = 0.0;  // |trace - 1|
  double purity = 0.0;       // Tr rho^2
  double mean_n = 0.0;       // Tr N rho
  cplx mean_a{};             // Tr a rho
  double min_eig = 0.0;
  std::optional<double> frob_dist_to_reference;
};

/// Scalar diagnostics of rho; the spectrum is taken of the Hermitian part.
inline ObservableRecord observe(const DensityMatrix& rho, double t = 0.0,
                                const std::optional<DensityMatrix>& reference = std::nullopt) {
  if (reference && !(reference->space() == rho.space())) {
    throw DimensionError("observe: reference lives on a different Fock space");
  }
  const ComplexMatrix& m = rho.matrix();
  const Eigen::Index d = rho.dim();
  ObservableRecord r;
  r.t = t;
  const cplx tr = m.trace();
  r.trace_re = tr.real();
  r.trace_drift = std::abs(tr - 1.0);
  // Tr(rho^2) = sum_{jk} rho_jk rho_kj
  r.purity = (m.cwiseProduct(m.transpose())).sum().real();
  for (Eigen::Index n = 0; n < d; ++n) r.mean_n += static_cast<double>(n) * m(n, n).real();
  // Tr(a rho) = sum_n sqrt(n) rho_{n, n-1}
  for (Eigen::Index n = 1; n < d; ++n) r.mean_a += std::sqrt(static_cast<double>(n)) * m(n, n - 1);
  r.min_eig = hermitian_eigenvalues(0.5 * (m + m.adjoint())).front();
  if (reference) r.frob_dist_to_reference = (m - reference->matrix()).norm();
  return r;
}

}  // namespace qdho
