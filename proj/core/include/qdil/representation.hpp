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

#include <functional>
#include <vector>

#include "qdil/algebra.hpp"
#include "qdil/instrument.hpp"
#include "qdil/linalg.hpp"

namespace qdil {

/**
 * A linear map 𝓜 → B(C^dim) given by its values on `algebra.basis()`.
 * Nothing forces it to be a *-homomorphism; `check` measures how far it is.
 */
struct Representation {
  FiniteVonNeumannAlgebra algebra;
  Index dim = 0;
  std::vector<Matrix> images;

  static Representation from_function(
      const FiniteVonNeumannAlgebra& algebra, Index dim,
      const std::function<Matrix(const Matrix&)>& f);

  /** π(x) for x ∈ 𝓜 (x is first projected by 𝓔). */
  Matrix operator()(const Matrix& x) const;
  Matrix unit() const;

  struct Report {
    double linear_dim_mismatch = 0.0;
    double multiplicativity = 0.0;
    double star = 0.0;
    double unit = 0.0;
    bool ok(double tol) const {
      return multiplicativity <= tol && star <= tol && unit <= tol;
    }
  };
  /** Checks π(e_ab) π(e_cd) = δ_bc π(e_ad), π(e_ab)* = π(e_ba), π(1) = 1. */
  Report check() const;
};

/** Ψ(M) = v* π(M) v with π(M) = M ⊗ 1 on H ⊗ C^r. */
struct Stinespring {
  Index dim_k = 0;
  Representation pi;
  Matrix v;
};

/** Minimal Stinespring dilation of a CP map on B(H); dim_k = dim·rank(Choi). */
Stinespring minimal_stinespring(const KrausFamily& kraus, Index dim,
                                const Tolerance& tol = {});
Stinespring minimal_stinespring_from_choi(const Matrix& choi, Index dim,
                                          const Tolerance& tol = {});

/**
 * (K, π₀, E₀, V) with 𝓘(M, Δ) = V* π₀(M) E₀(Δ) V, π₀ and E₀ commuting, and
 * K spanned by π₀(𝓜) E₀(𝓕) V H.
 */
struct InstrumentRepresentation {
  Index dim_k = 0;
  Representation pi0;
  std::vector<Matrix> e0;  // per atom
  Matrix v;                // dim_k × dim
  std::vector<Index> atom_dims;

  /** V* π₀(M) E₀({s}) V */
  Matrix reconstruct(const Matrix& m, std::size_t atom) const;
};

/**
 * Per-atom minimal Stinespring dilations compressed to their π(𝓜)-cyclic
 * subspaces, direct-summed. Validates the instrument first.
 */
InstrumentRepresentation instrument_representation(const CPInstrument& inst,
                                                   const Tolerance& tol = {});

struct MultiplicitySplit {
  Index dim_k = 0;
  Matrix u1;  // L → H ⊗ K, π(X) = u1* (X ⊗ 1) u1
  double residual = 0.0;
};

/** Split a representation of B(H) into H ⊗ multiplicity space. */
MultiplicitySplit multiplicity_split(const Representation& pi,
                                     const Tolerance& tol = {});

struct PvmLift {
  std::vector<Matrix> e0;
  double commutation_residual = 0.0;
  double form_residual = 0.0;
};

/**
 * Given projections P_s on L commuting with u2*(X ⊗ 1)u2, return E₀(s) on K
 * with u2 P_s u2* = 1 ⊗ E₀(s).
 */
PvmLift commutant_pvm_lift(const std::vector<Matrix>& projections,
                           const Matrix& u2, Index dim_h,
                           const Tolerance& tol = {});

struct IntertwinerVector {
  Vector eta;
  double residual = 0.0;
};

/** For V : H → H ⊗ L intertwining X and X ⊗ 1, the η with V ξ = ξ ⊗ η. */
IntertwinerVector intertwiner_vector(const Matrix& v, Index dim_h,
                                     const Tolerance& tol = {});

}  // namespace qdil
