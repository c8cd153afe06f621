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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qdil/algebra.hpp"
#include "qdil/instrument.hpp"
#include "qdil/outcome.hpp"
#include "qdil/representation.hpp"

namespace qdil {

/** A letter of a time word: `in` or an event. */
struct Letter {
  std::optional<Event> event;

  static Letter in() { return {}; }
  static Letter of(Event e) { return {std::move(e)}; }
  static Letter atom(std::size_t n_atoms, std::size_t i) {
    return {Event::atom(n_atoms, i)};
  }
  bool is_in() const { return !event.has_value(); }
  bool operator==(const Letter&) const = default;
};

using TimeWord = std::vector<Letter>;
using OperatorTuple = std::vector<Matrix>;

/** T^# */
TimeWord reversed(const TimeWord& t);
/** M⃗^# = (M_n*, …, M_1*) */
OperatorTuple adjoint_reversed(const OperatorTuple& m);
std::string to_string(const TimeWord& t, const OutcomeSpace& outcomes);

struct WordSample {
  TimeWord word;
  OperatorTuple ops;
};

/** Anything that can evaluate W_T(M⃗). */
class CorrelationModel {
 public:
  virtual ~CorrelationModel() = default;
  virtual Index dim() const = 0;
  virtual const FiniteVonNeumannAlgebra& algebra() const = 0;
  virtual const OutcomeSpace& outcomes() const = 0;
  virtual Matrix eval(const TimeWord& t, const OperatorTuple& ms) const = 0;

  /** Block matrix with (i, j) block W_{T_i^# × T_j}(M⃗_i^# × M⃗_j). */
  virtual Matrix gram(const std::vector<WordSample>& samples) const;
};

/**
 * Models of the form W_T(M⃗) = Σ_m Φ_m* π_{t_1}(M_1) ⋯ π_{t_k}(M_k) Φ_m,
 * evaluated by acting on tall blocks instead of forming products.
 */
class OperatorModel : public CorrelationModel {
 public:
  virtual Index space_dim() const = 0;
  virtual Index mixture_rank() const { return 1; }
  /** space_dim × (mixture_rank · dim); block m is Φ_m. */
  virtual const Matrix& embedding() const = 0;
  /** π_t(m) x */
  virtual Matrix act(const Letter& t, const Matrix& m, const Matrix& x) const = 0;
  /** π_t(m)* x */
  virtual Matrix act_adjoint(const Letter& t, const Matrix& m,
                             const Matrix& x) const = 0;

  /** π_T(M⃗) x */
  Matrix apply_word(const TimeWord& t, const OperatorTuple& ms, Matrix x) const;
  /** π_T(M⃗)* x, evaluated letter by letter. */
  Matrix apply_word_adjoint(const TimeWord& t, const OperatorTuple& ms,
                            Matrix x) const;
  /** Σ_m X_m* Y_m over mixture blocks. */
  Matrix pair(const Matrix& x, const Matrix& y) const;

  Matrix eval(const TimeWord& t, const OperatorTuple& ms) const override;
  Matrix gram(const std::vector<WordSample>& samples) const override;
};

/**
 * A representation triplet (L, {Π_t}, V): W_T(M⃗) = V* Π_T(M⃗) V.
 */
class CorrelationSystem {
 public:
  CorrelationSystem(FiniteVonNeumannAlgebra algebra, OutcomeSpace outcomes,
                    Representation pi_in, std::vector<Representation> pi_atom,
                    Matrix v);

  Index dim() const { return algebra_.dim(); }
  Index dim_l() const { return v_.rows(); }
  const FiniteVonNeumannAlgebra& algebra() const { return algebra_; }
  const OutcomeSpace& outcomes() const { return outcomes_; }
  const Representation& pi_in() const { return pi_in_; }
  const Representation& pi_atom(std::size_t s) const { return pi_atom_.at(s); }
  const std::vector<Representation>& pi_atoms() const { return pi_atom_; }
  const Matrix& v() const { return v_; }

  /** Π_t(m); events sum their atoms. */
  Matrix pi(const Letter& t, const Matrix& m) const;

  /** V* Π_T(M⃗) V; throws OutsideAlgebra for slots not in 𝓜. */
  Matrix eval_W(const TimeWord& t, const OperatorTuple& ms,
                const Tolerance& tol = {}) const;

  struct InvariantReport {
    double representation = 0.0;  // worst multiplicativity/star/unit residual
    double pvm = 0.0;
    double intertwining = 0.0;
    double closure = 0.0;
    bool ok(double tol) const {
      return representation <= tol && pvm <= tol && intertwining <= tol &&
             closure <= tol;
    }
  };
  InvariantReport check_invariants() const;

  std::shared_ptr<const OperatorModel> model() const;

 private:
  FiniteVonNeumannAlgebra algebra_;
  OutcomeSpace outcomes_;
  Representation pi_in_;
  std::vector<Representation> pi_atom_;
  Matrix v_;
};

struct AxiomResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string note;
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool all_passed() const;
  const AxiomResult& operator[](const std::string& name) const;
};

/**
 * Randomised check of MC1–MC6 plus adjoint symmetry for words of length at
 * most `depth`. MC2 assembles a block Gram matrix over `samples` words.
 */
AxiomReport verify_axioms(const CorrelationModel& model, std::size_t depth,
                          std::size_t samples, std::uint64_t seed,
                          const Tolerance& tol = {});

/** 𝓘_W(M, {s}) = W_{(s)}(M), Kraus form recovered from the Choi matrix. */
CPInstrument induced_instrument(const CorrelationSystem& sys,
                                const Tolerance& tol = {});

/**
 * Block construction on L = H ⊕ K from a minimal instrument representation;
 * `anchor` is the atom carrying the H summand (default: first label).
 */
CorrelationSystem from_instrument(const CPInstrument& inst,
                                  const std::optional<std::string>& anchor = {},
                                  const Tolerance& tol = {});

struct KernelTableResult {
  CorrelationSystem system;
  /** True when span Λ(C_{d-1}) already equals L, i.e. Π_t are exact. */
  bool stabilized = false;
  std::size_t index_count = 0;
};

/**
 * Rebuild a representation triplet from correlation values alone: minimal
 * Kolmogorov decomposition of the kernel on words of length ≤ depth, with
 * Π_t(g) acting as the left shift. `table_max_length` is the longest word
 * the table can answer (must be ≥ 2·depth + 2). `generators` together with 1
 * must span 𝓜; empty means the algebra basis.
 */
KernelTableResult from_kernel_table(const CorrelationModel& table,
                                    std::size_t table_max_length,
                                    std::size_t depth,
                                    const std::vector<Matrix>& generators = {},
                                    const Tolerance& tol = {});

}  // namespace qdil
