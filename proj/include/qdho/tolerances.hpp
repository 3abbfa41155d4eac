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

namespace qdho {

/// Numerical thresholds shared across the library. The defaults are the
/// contract values; callers may pass a modified copy where an API accepts one.
struct Tolerances {
  // linalg
  double hermitian_input = 1e-10;   // max |x - x^dagger| accepted by the eigensolver
  double jacobi_off_diagonal = 1e-15;  // relative off-diagonal mass that ends the sweeps
  int jacobi_max_sweeps = 100;

  // fock
  double coherent_tail = 1e-10;  // mass beyond the truncation a coherent state may lose
  double squeezed_tail = 1e-8;   // same, for squeezed states
  double state_norm = 1e-9;

  // density matrices at construction
  double density_hermitian = 1e-9;
  double density_trace = 1e-9;
  double density_min_eigenvalue = -1e-8;

  // analytic
  double gauss_pivot = 1e-12;  // |d| below this makes the Gauss decomposition singular
  double gauss_det = 1e-10;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace qdho
