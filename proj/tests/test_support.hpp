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

// Planted violations and small builders shared by the unit and acceptance
// tests.

#include <memory>
#include <utility>

#include "oracles.hpp"
#include "qdil/correlations.hpp"
#include "qdil/measuring_process.hpp"

namespace testing_support {

using namespace qdil;

/** Negates every value on words made of exactly two atom letters. */
class SignFlipModel : public CorrelationModel {
 public:
  explicit SignFlipModel(std::shared_ptr<const CorrelationModel> base)
      : base_(std::move(base)) {}
  Index dim() const override { return base_->dim(); }
  const FiniteVonNeumannAlgebra& algebra() const override { return base_->algebra(); }
  const OutcomeSpace& outcomes() const override { return base_->outcomes(); }
  Matrix eval(const TimeWord& t, const OperatorTuple& ms) const override {
    Matrix w = base_->eval(t, ms);
    bool flip = t.size() == 2 && !t[0].is_in() && !t[1].is_in() &&
                t[0].event->count() == 1 && t[1].event->count() == 1;
    return flip ? Matrix(-w) : w;
  }

 private:
  std::shared_ptr<const CorrelationModel> base_;
};

/** The same system with the representation of one atom replaced by zero. */
inline CorrelationSystem drop_atom(const CorrelationSystem& sys, std::size_t atom) {
  std::vector<Representation> atoms = sys.pi_atoms();
  for (auto& im : atoms[atom].images) im.setZero();
  return {sys.algebra(), sys.outcomes(), sys.pi_in(), std::move(atoms), sys.v()};
}

/**
 * The same process with U replaced by U·T, where T fixes H ⊗ supp σ
 * pointwise and is a seeded random unitary on its orthocomplement. The
 * induced instrument is unchanged; longer words generally see T.
 */
inline MeasuringProcess twist_off_support(const MeasuringProcess& mp, unsigned seed) {
  Index n = mp.dim(), k = mp.dim_k;
  Eigen::SelfAdjointEigenSolver<oracle::M> es(mp.sigma);
  oracle::M support_k = oracle::M::Zero(k, k);
  for (Index j = 0; j < k; ++j)
    if (es.eigenvalues()(j) > 1e-12)
      support_k += es.eigenvectors().col(j) * es.eigenvectors().col(j).adjoint();
  oracle::M p = oracle::kron(oracle::M::Identity(n, n), support_k);
  oracle::M q = oracle::M::Identity(n * k, n * k) - p;
  Eigen::SelfAdjointEigenSolver<oracle::M> qs(q);
  Index c = 0;
  for (Index j = 0; j < n * k; ++j) c += qs.eigenvalues()(j) > 0.5 ? 1 : 0;
  oracle::M basis = qs.eigenvectors().rightCols(c);
  oracle::M t = p + basis * oracle::fixed_unitary(c, seed) * basis.adjoint();
  MeasuringProcess out = mp;
  out.u = mp.u * t;
  return out;
}

/**
 * Direct evaluation of a measuring process's correlation functions: full
 * Kronecker products and an explicit partial trace against σ.
 */
inline oracle::M brute_force_W(const MeasuringProcess& mp, const TimeWord& t,
                               const OperatorTuple& ms) {
  Index n = mp.dim(), k = mp.dim_k;
  oracle::M prod = oracle::M::Identity(n * k, n * k);
  for (std::size_t i = 0; i < t.size(); ++i) {
    oracle::M factor;
    if (t[i].is_in()) {
      factor = oracle::kron(ms[i], oracle::M::Identity(k, k));
    } else {
      oracle::M e = oracle::M::Zero(k, k);
      for (auto s : t[i].event->members()) e += mp.e[s];
      factor = mp.u.adjoint() * oracle::kron(ms[i], e) * mp.u;
    }
    prod = prod * factor;
  }
  return oracle::slice(prod, mp.sigma, n, k);
}

}  // namespace testing_support
