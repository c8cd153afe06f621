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
#include <random>

#include "qdil/algebra.hpp"
#include "qdil/instrument.hpp"
#include "qdil/linalg.hpp"

namespace qdil {

/** Seeded generators for tests, benchmarks and the CLI. */
class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }
  double normal() { return gauss_(rng_); }
  Complex complex_normal() { return {normal(), normal()}; }
  Matrix ginibre(Index rows, Index cols);

  /** Haar-distributed unitary (QR of a Ginibre matrix with phase fix). */
  Matrix unitary(Index n);
  /** Unit vector, uniform on the sphere. */
  Vector unit_vector(Index n);
  /** Density matrix with the given rank (full rank when rank == 0). */
  Matrix state(Index n, Index rank = 0);
  /** Element of 𝓜 with operator norm one. */
  Matrix element(const FiniteVonNeumannAlgebra& alg);

  /**
   * Complete instrument on B(C^dim) with `kraus_per_atom` Kraus operators
   * per outcome, from a random isometry C^dim → C^{dim·atoms·kraus}.
   */
  CPInstrument instrument(Index dim, std::size_t atoms, std::size_t kraus_per_atom);

  /** Complete instrument on 𝓜 whose Kraus operators all lie in 𝓜. */
  CPInstrument inner_instrument(const FiniteVonNeumannAlgebra& alg,
                                std::size_t atoms, std::size_t kraus_per_atom);

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace qdil
