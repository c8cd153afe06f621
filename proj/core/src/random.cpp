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

#include "qdil/random.hpp"

#include <cmath>

#include "qdil/error.hpp"

namespace qdil {

Matrix Random::ginibre(Index rows, Index cols) {
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = complex_normal();
  return g;
}

Matrix Random::unitary(Index n) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(n, n));
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

Vector Random::unit_vector(Index n) {
  Vector v = ginibre(n, 1).col(0);
  return v / v.norm();
}

Matrix Random::state(Index n, Index rank) {
  if (rank <= 0 || rank > n) rank = n;
  Matrix g = ginibre(n, rank);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

Matrix Random::element(const FiniteVonNeumannAlgebra& alg) {
  Vector c(alg.linear_dim());
  for (Index k = 0; k < c.size(); ++k) c(k) = complex_normal();
  Matrix m = alg.from_coordinates(c);
  return m / op_norm(m);
}

CPInstrument Random::instrument(Index dim, std::size_t atoms,
                                std::size_t kraus_per_atom) {
  if (atoms == 0 || kraus_per_atom == 0) {
    throw Error(ErrorKind::InvalidArgument, "need at least one atom and Kraus operator");
  }
  Index total = static_cast<Index>(atoms * kraus_per_atom);
  Matrix w = unitary(dim * total).leftCols(dim);
  std::vector<KrausFamily> kraus(atoms);
  for (std::size_t s = 0; s < atoms; ++s)
    for (std::size_t j = 0; j < kraus_per_atom; ++j) {
      Index slot = static_cast<Index>(s * kraus_per_atom + j);
      kraus[s].push_back(w.middleRows(slot * dim, dim));
    }
  return {dim, OutcomeSpace::numbered(atoms), std::move(kraus)};
}

CPInstrument Random::inner_instrument(const FiniteVonNeumannAlgebra& alg,
                                      std::size_t atoms, std::size_t kraus_per_atom) {
  if (atoms == 0 || kraus_per_atom == 0) {
    throw Error(ErrorKind::InvalidArgument, "need at least one atom and Kraus operator");
  }
  std::vector<KrausFamily> kraus(atoms);
  Matrix total = Matrix::Zero(alg.dim(), alg.dim());
  for (auto& fam : kraus)
    for (std::size_t j = 0; j < kraus_per_atom; ++j) {
      fam.push_back(element(alg));
      total += fam.back().adjoint() * fam.back();
    }
  // normalise: K ↦ K S^{-1/2} with S = Σ K*K ∈ 𝓜 keeps every K in 𝓜
  auto eig = eigh(total);
  Matrix inv_sqrt = eig.vectors *
                    eig.values.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() *
                    eig.vectors.adjoint();
  for (auto& fam : kraus)
    for (auto& k : fam) k = k * inv_sqrt;
  return {alg, OutcomeSpace::numbered(atoms), std::move(kraus)};
}

}  // namespace qdil
