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

// Dense complex matrix kernel. Storage, products and LU solves come from
// Eigen; Kronecker products, the vectorization map, the matrix exponential
// and the Hermitian eigensolver are implemented here.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qdho/error.hpp"
#include "qdho/tolerances.hpp"

namespace qdho {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major so that the flattening map is a plain reshape.
using ComplexMatrix =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

inline constexpr cplx kI{0.0, 1.0};

/// Column obtained by flattening a matrix row by row:
/// (x00, x01, ..., x10, x11, ...). With this ordering AXB maps to kron(A, B^T).
class VectorizedState {
 public:
  VectorizedState() = default;
  explicit VectorizedState(ComplexVector entries) : entries_(std::move(entries)) {}

  [[nodiscard]] Eigen::Index dim() const { return entries_.size(); }
  [[nodiscard]] const ComplexVector& entries() const { return entries_; }
  [[nodiscard]] ComplexVector& entries() { return entries_; }

 private:
  ComplexVector entries_;
};

inline ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

inline bool all_finite(const ComplexMatrix& x) {
  return std::all_of(x.data(), x.data() + x.size(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  out.noalias() = a * b;
  return out;
}

inline ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("add: shapes differ");
  return a + b;
}

inline ComplexMatrix scale(const ComplexMatrix& a, cplx s) { return s * a; }
inline ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }
inline ComplexMatrix transpose(const ComplexMatrix& a) { return a.transpose(); }
inline double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }
inline cplx trace(const ComplexMatrix& a) { return a.trace(); }

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b) - matmul(b, a);
}

/// Largest entrywise modulus.
inline double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/// max |x - x^dagger| over all entries.
inline double hermiticity_error(const ComplexMatrix& x) {
  if (x.rows() != x.cols()) throw DimensionError("hermiticity_error: matrix not square");
  return max_abs(x - x.adjoint());
}

/// Leading k x k block.
inline ComplexMatrix leading_block(const ComplexMatrix& x, Eigen::Index k) {
  return x.topLeftCorner(std::min(k, x.rows()), std::min(k, x.cols()));
}

inline double induced_one_norm(const ComplexMatrix& x) {
  return x.size() == 0 ? 0.0 : x.cwiseAbs().colwise().sum().maxCoeff();
}

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  constexpr auto kMax = std::numeric_limits<Eigen::Index>::max();
  if ((b.rows() != 0 && a.rows() > kMax / b.rows()) ||
      (b.cols() != 0 && a.cols() > kMax / b.cols())) {
    throw DimensionError("kron: result dimensions overflow");
  }
  const Eigen::Index br = b.rows();
  const Eigen::Index bc = b.cols();
  ComplexMatrix out(a.rows() * br, a.cols() * bc);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    }
  }
  return out;
}

inline VectorizedState vectorize(const ComplexMatrix& x) {
  return VectorizedState(Eigen::Map<const ComplexVector>(x.data(), x.size()));
}

inline ComplexMatrix devectorize(const VectorizedState& v, Eigen::Index rows, Eigen::Index cols) {
  if (rows <= 0 || cols <= 0 || v.dim() != rows * cols) {
    throw DimensionError("devectorize: vector length " + std::to_string(v.dim()) +
                         " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  return Eigen::Map<const ComplexMatrix>(v.entries().data(), rows, cols);
}

namespace detail {

// Pade approximant coefficients and the 1-norm bounds below which each
// degree meets double precision backward error (Higham 2005).
inline constexpr std::array<double, 4> kPade3{120.0, 60.0, 12.0, 1.0};
inline constexpr std::array<double, 6> kPade5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
inline constexpr std::array<double, 8> kPade7{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                              25200.0,    1512.0,    56.0,      1.0};
inline constexpr std::array<double, 10> kPade9{17643225600.0, 8821612800.0, 2075673600.0,
                                               302702400.0,   30270240.0,   2162160.0,
                                               110880.0,      3960.0,       90.0,
                                               1.0};
inline constexpr std::array<double, 14> kPade13{
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
inline constexpr std::array<double, 5> kPadeTheta{1.495585217958292e-2, 2.539398330063230e-1,
                                                  9.504178996162932e-1, 2.097847961257068e0,
                                                  5.371920351148152e0};

template <std::size_t M>
std::pair<ComplexMatrix, ComplexMatrix> pade_low(const ComplexMatrix& a,
                                                 const std::array<double, M>& b) {
  const Eigen::Index n = a.rows();
  const ComplexMatrix a2 = matmul(a, a);
  ComplexMatrix odd = b[1] * identity(n);
  ComplexMatrix even = b[0] * identity(n);
  ComplexMatrix power = identity(n);
  for (std::size_t k = 2; k < M; k += 2) {
    power = matmul(power, a2);
    even += b[k] * power;
    odd += b[k + 1] * power;
  }
  return {matmul(a, odd), even};
}

inline std::pair<ComplexMatrix, ComplexMatrix> pade13(const ComplexMatrix& a) {
  const auto& b = kPade13;
  const Eigen::Index n = a.rows();
  const ComplexMatrix id = identity(n);
  const ComplexMatrix a2 = matmul(a, a);
  const ComplexMatrix a4 = matmul(a2, a2);
  const ComplexMatrix a6 = matmul(a4, a2);
  const ComplexMatrix inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
  const ComplexMatrix u =
      matmul(a, ComplexMatrix(matmul(a6, inner_u) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id));
  const ComplexMatrix inner_v = b[12] * a6 + b[10] * a4 + b[8] * a2;
  const ComplexMatrix v = matmul(a6, inner_v) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  return {u, v};
}

}  // namespace detail

/// Matrix exponential by scaling and squaring around a diagonal Pade
/// approximant; the degree and the number of squarings follow from ||x||_1.
inline ComplexMatrix expm(const ComplexMatrix& x) {
  if (x.rows() != x.cols()) throw DimensionError("expm: matrix not square");
  if (!all_finite(x)) throw NumericError("expm: input has non-finite entries");
  const Eigen::Index n = x.rows();
  if (n == 0) return x;

  const double norm = induced_one_norm(x);
  std::pair<ComplexMatrix, ComplexMatrix> uv;
  int squarings = 0;
  if (norm <= detail::kPadeTheta[0]) {
    uv = detail::pade_low(x, detail::kPade3);
  } else if (norm <= detail::kPadeTheta[1]) {
    uv = detail::pade_low(x, detail::kPade5);
  } else if (norm <= detail::kPadeTheta[2]) {
    uv = detail::pade_low(x, detail::kPade7);
  } else if (norm <= detail::kPadeTheta[3]) {
    uv = detail::pade_low(x, detail::kPade9);
  } else {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / detail::kPadeTheta[4]))));
    uv = detail::pade13(x * std::ldexp(1.0, -squarings));
  }
  const auto& [u, v] = uv;
  ComplexMatrix result = ComplexMatrix(v - u).partialPivLu().solve(ComplexMatrix(v + u));
  for (int k = 0; k < squarings; ++k) result = matmul(result, result);
  if (!all_finite(result)) throw NumericError("expm: result overflowed");
  return result;
}

/// Spectrum (ascending) and unitary eigenvectors (columns) of a Hermitian matrix.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. Each rotation first
/// removes the phase of the pivot, then zeroes it with a real plane rotation.
inline HermitianEigen hermitian_eigen(const ComplexMatrix& x,
                                      const Tolerances& tol = kDefaultTolerances) {
  if (x.rows() != x.cols()) throw DimensionError("hermitian_eigen: matrix not square");
  if (!all_finite(x)) throw NumericError("hermitian_eigen: input has non-finite entries");
  const double herm = hermiticity_error(x);
  if (herm > tol.hermitian_input) {
    throw Error("hermitian_eigen: input is not Hermitian (max |x - x^dagger| = " +
                std::to_string(herm) + ")");
  }
  const Eigen::Index n = x.rows();
  ComplexMatrix a = 0.5 * (x + x.adjoint());
  ComplexMatrix v = identity(n);
  const double scale = a.norm();

  auto off_diagonal = [&] {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) sum += std::norm(a(i, j));
    return std::sqrt(sum);
  };

  for (int sweep = 0; sweep < tol.jacobi_max_sweeps; ++sweep) {
    const double off = off_diagonal();
    if (off == 0.0 || off <= tol.jacobi_off_diagonal * scale) break;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const cplx phase = apq / r;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // Rotation restricted to the (p, q) plane.
        const cplx jpp = c;
        const cplx jpq = s;
        const cplx jqp = -s * std::conj(phase);
        const cplx jqq = c * std::conj(phase);
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });
  HermitianEigen out;
  out.values.reserve(order.size());
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values.push_back(a(src, src).real());
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& x,
                                                 const Tolerances& tol = kDefaultTolerances) {
  return hermitian_eigen(x, tol).values;
}

}  // namespace qdho
