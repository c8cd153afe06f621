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

#include <memory>
#include <string>
#include <vector>

#include "qdil/algebra.hpp"
#include "qdil/correlations.hpp"
#include "qdil/instrument.hpp"
#include "qdil/outcome.hpp"

namespace qdil {

/**
 * A measuring process (K, σ, E, U) for a system with algebra 𝓜 on H:
 *
 *   𝓘(M, Δ) = (id ⊗ σ)[U* (M ⊗ E(Δ)) U]
 *
 * Probe states are stored as density matrices; pure probes have rank one.
 */
struct MeasuringProcess {
  FiniteVonNeumannAlgebra algebra;
  OutcomeSpace outcomes;
  Index dim_k = 1;
  Matrix sigma;           // dim_k × dim_k
  std::vector<Matrix> e;  // per atom, dim_k × dim_k projections
  Matrix u;               // unitary on H ⊗ K

  Index dim() const { return algebra.dim(); }

  /** E(Δ) = Σ_{s ∈ Δ} E(s) */
  Matrix pointer(const Event& event) const;

  /**
   * Throws Dimension / NotState / NotRepresentation (for a non-PVM pointer or
   * non-unitary U) / OutsideAlgebra (if the induced maps leave 𝓜).
   */
  void validate(const Tolerance& tol = {}) const;

  /** Correlation functions: Π_in(M) = M ⊗ 1, Π_s(M) = U*(M ⊗ E(s))U. */
  std::shared_ptr<const OperatorModel> model(const Tolerance& tol = {}) const;
};

/**
 * W_T(M⃗) = (id ⊗ σ)(π_{t_1}(M_1) ⋯ π_{t_k}(M_k)). One-off convenience over
 * `mp.model()`; reuse the model when evaluating many words.
 */
Matrix correlations_of_mp(const MeasuringProcess& mp, const TimeWord& t,
                          const OperatorTuple& ms, const Tolerance& tol = {});

/** The instrument induced by a measuring process, in minimal Kraus form. */
CPInstrument induced_instrument_mp(const MeasuringProcess& mp,
                                   const Tolerance& tol = {});

struct OrderResult {
  std::size_t order = 0;
  double residual = 0.0;
  bool equivalent = false;
  std::string label;
};

struct EquivalenceReport {
  std::vector<OrderResult> orders;
  /** True when every checked order agrees. */
  bool equivalent() const;
  /** First order that disagrees, 0 if none. */
  std::size_t first_difference() const;
};

/**
 * Compare all correlation functions of word length 1..max_order, with every
 * slot running over the algebra's matrix units. Order 2 is the statistical
 * equivalence check; agreement at every order is complete equivalence.
 */
EquivalenceReport n_equivalent(const CorrelationModel& a, const CorrelationModel& b,
                               std::size_t max_order, const Tolerance& tol = {});

}  // namespace qdil
