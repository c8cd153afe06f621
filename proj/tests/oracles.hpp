// Copyright 2026 The qdil Authors
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

// Reference computations for the tests. They deliberately avoid the library:
// everything is written with explicit loops, full Kronecker products and
// SVD-based ranks, so that agreement with the library is evidence rather
// than tautology.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
using V = Eigen::VectorXcd;

inline M kron(const M& a, const M& b) {
  M out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline M unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  M e = M::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

/** Σ K* m K */
inline M heisenberg(const std::vector<M>& kraus, const M& m) {
  M out = M::Zero(m.rows(), m.cols());
  for (const auto& k : kraus) out += k.adjoint() * m * k;
  return out;
}

/** Σ_ij E_ij ⊗ Φ(E_ij) */
inline M choi(const std::vector<M>& kraus, Eigen::Index n) {
  M out = M::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out += kron(unit(n, i, j), heisenberg(kraus, unit(n, i, j)));
  return out;
}

inline Eigen::Index rank(const M& a, double rel = 1e-9) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<M> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel * std::max(1.0, s(0))) ++r;
  return r;
}

inline double max_entry(const M& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

inline double spectral_norm(const M& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<M> svd(a);
  return svd.singularValues()(0);
}

/** Y on H with tr(ρY) = tr((ρ⊗σ)X): explicit partial trace against σ. */
inline M slice(const M& x, const M& sigma, Eigen::Index n, Eigen::Index k) {
  M out = M::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b) out(i, j) += x(i * k + a, j * k + b) * sigma(b, a);
  return out;
}

/** Least-squares coordinates of m in the span of `basis`, by stacking vec(B_k). */
inline V coordinates(const std::vector<M>& basis, const M& m) {
  Eigen::Index n2 = m.size();
  M a(n2, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    a.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const V>(basis[k].data(), n2);
  V b = Eigen::Map<const V>(m.data(), n2);
  return a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
}

/**
 * Dimension of the π(𝓜)-cyclic subspace generated by V H for a Stinespring
 * pair of Ψ: rank of the Gram matrix [⟨ξ_j, Ψ(B_k* B_l) ξ_j'⟩].
 */
inline Eigen::Index cyclic_rank(const std::vector<M>& kraus, const std::vector<M>& basis,
                                Eigen::Index n) {
  Eigen::Index nb = static_cast<Eigen::Index>(basis.size());
  M g(nb * n, nb * n);
  for (Eigen::Index k = 0; k < nb; ++k)
    for (Eigen::Index l = 0; l < nb; ++l)
      g.block(k * n, l * n, n, n) = heisenberg(kraus, basis[k].adjoint() * basis[l]);
  return rank(g);
}

/** |p̂ − p| ≤ 3 √(p(1−p)/N) */
inline bool within_three_sigma(double p, std::size_t count, std::size_t shots) {
  double f = static_cast<double>(count) / static_cast<double>(shots);
  return std::abs(f - p) <= 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(shots)) + 1e-12;
}

/** Haar-ish unitary from Gram–Schmidt of fixed pseudo-random columns. */
inline M fixed_unitary(Eigen::Index n, unsigned seed) {
  M a(n, n);
  unsigned x = seed * 2654435761u + 12345u;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      x = x * 1664525u + 1013904223u;
      double re = static_cast<double>(x >> 8) / 16777216.0 - 0.5;
      x = x * 1664525u + 1013904223u;
      double im = static_cast<double>(x >> 8) / 16777216.0 - 0.5;
      a(i, j) = C(re, im);
    }
  Eigen::HouseholderQR<M> qr(a);
  return qr.householderQ() * M::Identity(n, n);
}

}  // namespace oracle
