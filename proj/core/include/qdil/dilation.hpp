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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdil/correlations.hpp"
#include "qdil/instrument.hpp"
#include "qdil/measuring_process.hpp"

namespace qdil {

/** A constructed measuring process together with its internal residuals. */
struct MpConstruction {
  MeasuringProcess mp;
  /** Named residuals of every sub-construction (all ≤ tol on success). */
  std::map<std::string, double> residuals;
  std::vector<std::string> notes;
};

struct CorrelationDilationOptions {
  /**
   * The completion between the orthocomplements of the σ-relevant subspaces
   * is the identity between canonical bases unless a seed is given, in which
   * case it is twisted by a seeded Haar-random unitary.
   */
  std::optional<std::uint64_t> completion_seed;
};

/**
 * Measuring process on H ⊗ L₁ ⊗ L₂ realising a correlation system over
 * B(H): L ≅ H ⊗ L₁ through Π_in, L ≅ H ⊗ L₂ through Π_S, σ = |η₁ ⊗ η₂⟩,
 * E = 1 ⊗ E₀. Requires the full algebra.
 */
MpConstruction mp_from_correlations(const CorrelationSystem& sys,
                                    const CorrelationDilationOptions& options = {},
                                    const Tolerance& tol = {});

/**
 * Inner measuring process (U ∈ 𝓜 ⊗ B(K)) for an instrument whose Kraus
 * operators lie in 𝓜. Throws OutsideAlgebra otherwise. K = C^{N+2} ⊗ C².
 */
MpConstruction inner_mp_from_kraus(const CPInstrument& inst,
                                   const Tolerance& tol = {});

struct FaithfulConstruction {
  MpConstruction construction;
  /** Per atom: 𝓘(1, {s}) = 0. */
  std::vector<bool> null_atoms;
  /** Per atom: rank of the pointer projection E({s}). */
  std::vector<Index> pointer_ranks;
  /** E({s}) ≠ 0 on every non-null atom (so E is injective on their subsets). */
  bool faithful = false;
};

/**
 * Measuring process with a pointer that is faithful on the non-null atoms,
 * realising 𝓘 on 𝓜 through X ↦ 𝓘(𝓔(X), ·). `meter_dim` sizes the extra
 * partial-isometry dilation block.
 */
FaithfulConstruction faithful_mp(const CPInstrument& inst, Index meter_dim = 1,
                                 const Tolerance& tol = {});

/**
 * Unitary Halmos block of a partial isometry t on C^D, acting on C^D ⊗ C²:
 * t ⊗ G₁₁ + (1 − tt*) ⊗ G₁₂ + (1 − t*t) ⊗ G₂₁ − t* ⊗ G₂₂.
 */
Matrix halmos_unitary(const Matrix& t);

}  // namespace qdil
