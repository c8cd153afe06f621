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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qdil/algebra.hpp"
#include "qdil/linalg.hpp"
#include "qdil/outcome.hpp"

namespace qdil {

using KrausFamily = std::vector<Matrix>;
using HeisenbergMap = std::function<Matrix(const Matrix&)>;

/**
 * Choi matrix of a Heisenberg-picture map: C = Σ_ij E_ij ⊗ Φ(E_ij).
 * Φ is CP iff C ⪰ 0.
 */
Matrix heisenberg_choi(const HeisenbergMap& phi, Index dim);

/** Minimal Kraus family of a PSD Choi matrix; Φ(M) = Σ K* M K. */
KrausFamily kraus_from_choi(const Matrix& choi, Index dim, const Tolerance& tol = {});

/** Σ K* M K */
Matrix apply_kraus(const KrausFamily& kraus, const Matrix& m);

/** Marker for a posterior conditioned on a probability-zero event. */
struct Indefinite {};
using Posterior = std::variant<Matrix, Indefinite>;

struct CpReport {
  bool cp = false;
  bool complete = false;
  /** Smallest Choi eigenvalue per atom. */
  std::vector<double> min_eigenvalue;
  double completeness_residual = 0.0;
};

struct RepeatabilityReport {
  bool holds = false;
  double residual = 0.0;
};

struct TrajectoryStep {
  std::size_t atom = 0;
  Matrix state;
};

class CPInstrument;

struct CoarseGraining;

/**
 * A CP instrument over a finite outcome set, stored per atom:
 *
 *   𝓘(M, {s}) = Σ_j K_{s,j}* M K_{s,j}    (Heisenberg picture)
 *   𝓘({s}) ρ  = Σ_j K_{s,j} ρ K_{s,j}*    (Schrödinger picture)
 *
 * Construction checks shapes only; `validate` certifies completeness and that
 * the maps preserve the algebra.
 */
class CPInstrument {
 public:
  CPInstrument(FiniteVonNeumannAlgebra algebra, OutcomeSpace outcomes,
               std::vector<KrausFamily> kraus);
  /** Full algebra B(C^dim). */
  CPInstrument(Index dim, OutcomeSpace outcomes, std::vector<KrausFamily> kraus);

  Index dim() const { return algebra_.dim(); }
  const FiniteVonNeumannAlgebra& algebra() const { return algebra_; }
  const OutcomeSpace& outcomes() const { return outcomes_; }
  const std::vector<KrausFamily>& kraus() const { return kraus_; }
  const KrausFamily& kraus(std::size_t atom) const { return kraus_.at(atom); }

  Matrix apply_dual(const Matrix& m, const Event& event) const;
  Matrix apply_dual_atom(const Matrix& m, std::size_t atom) const;
  Matrix apply_predual(const Matrix& rho, const Event& event,
                       const Tolerance& tol = {}) const;
  double outcome_probability(const Matrix& rho, const Event& event,
                             const Tolerance& tol = {}) const;
  Posterior posterior_state(const Matrix& rho, const Event& event,
                            const Tolerance& tol = {}) const;

  /** ‖Σ K*K − 1‖ */
  double completeness_residual() const;
  /** Worst ‖𝓘(B_k, s) − 𝓔(𝓘(B_k, s))‖ over the algebra basis. */
  double closure_residual() const;
  /** Throws Incomplete / OutsideAlgebra when the instrument is not valid. */
  void validate(const Tolerance& tol = {}) const;

  CpReport verify_cp(const Tolerance& tol = {}) const;
  RepeatabilityReport is_weakly_repeatable(const Tolerance& tol = {}) const;
  RepeatabilityReport is_repeatable(const Tolerance& tol = {}) const;

  /**
   * Discrete instrument agreeing with this one on the σ-field generated by
   * `generating_events`. `anchors` maps a cell index to the label carrying
   * it; missing cells use their lexicographically first label.
   */
  CoarseGraining coarse_grain(
      const std::vector<Event>& generating_events,
      const std::map<std::size_t, std::string>& anchors = {}) const;

  /** Repeated Davies–Lewis updates; deterministic in `seed`. */
  std::vector<TrajectoryStep> sample_trajectory(
      const Matrix& rho0, std::size_t steps, std::uint64_t seed,
      const Tolerance& tol = {}) const;

  /** Independent single-shot outcome counts from `rho`. */
  std::vector<std::size_t> sample_counts(
      const Matrix& rho, std::size_t shots, std::uint64_t seed,
      const Tolerance& tol = {}) const;

  /** Per-atom Heisenberg Choi matrices (maps extended to B(H) by Kraus form). */
  std::vector<Matrix> choi() const;

  /** 𝓔 ∘ 𝓘 as an instrument on `alg` (Kraus recomputed from the Choi). */
  CPInstrument compressed_to(const FiniteVonNeumannAlgebra& alg,
                             const Tolerance& tol = {}) const;

  /** Same maps with each atom's Kraus family made minimal. */
  CPInstrument minimized(const Tolerance& tol = {}) const;

 private:
  FiniteVonNeumannAlgebra algebra_;
  OutcomeSpace outcomes_;
  std::vector<KrausFamily> kraus_;
};

struct CoarseGraining {
  CPInstrument instrument;
  std::vector<Event> cells;
  std::vector<std::size_t> anchors;
};

/**
 * Instrument given map-wise by per-atom Heisenberg Choi matrices. Not
 * necessarily CP; exists to exhibit failures. Convert with `to_cp`.
 */
class MapInstrument {
 public:
  MapInstrument(Index dim, OutcomeSpace outcomes, std::vector<Matrix> choi);

  Index dim() const { return dim_; }
  const OutcomeSpace& outcomes() const { return outcomes_; }
  const std::vector<Matrix>& choi() const { return choi_; }

  Matrix apply_dual_atom(const Matrix& m, std::size_t atom) const;
  CpReport verify_cp(const Tolerance& tol = {}) const;
  /** Throws ChoiNegative (witness = the offending eigenvalue). */
  CPInstrument to_cp(const Tolerance& tol = {}) const;

 private:
  Index dim_;
  OutcomeSpace outcomes_;
  std::vector<Matrix> choi_;
};

/**
 * Worst entrywise difference of 𝓘(B, s) over atoms s and matrix units B of
 * the algebra of `a`. Throws if the outcome sets or dimensions differ.
 */
double instrument_distance(const CPInstrument& a, const CPInstrument& b);

/** Named helpers used by fixtures and tests. */
CPInstrument luders_instrument(const std::vector<Matrix>& projections,
                               OutcomeSpace outcomes);

}  // namespace qdil
