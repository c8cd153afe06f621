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

#include <vector>

#include "qdil/linalg.hpp"

namespace qdil {

/** One summand M_n ⊗ 1_m of a block decomposition. */
struct Block {
  Index n = 1;
  Index m = 1;

  bool operator==(const Block&) const = default;
};

/**
 * A unital *-subalgebra of B(C^dim), presented as
 *
 *   B* 𝓜 B = ⊕_b (M_{n_b} ⊗ 1_{m_b})
 *
 * where B is `basis_change()`. Inside summand b the block-basis index of
 * (factor a, multiplicity μ) is offset_b + a * m_b + μ.
 */
class FiniteVonNeumannAlgebra {
 public:
  /** The trivial algebra on C^1. */
  FiniteVonNeumannAlgebra();
  FiniteVonNeumannAlgebra(
      Index dim, std::vector<Block> blocks, Matrix basis_change,
      const Tolerance& tol = {});

  static FiniteVonNeumannAlgebra full(Index dim);
  static FiniteVonNeumannAlgebra scalars(Index dim);
  static FiniteVonNeumannAlgebra diagonal(Index dim);
  /** Standard-basis block diagonal algebra, no basis change. */
  static FiniteVonNeumannAlgebra block_diagonal(std::vector<Block> blocks);

  /**
   * Best-effort: the algebra generated by `generators` (and 1), found by
   * closing the span under products and splitting along the centre with
   * random elements. Degenerate spectra beyond `tol` may mislead it.
   */
  static FiniteVonNeumannAlgebra generated_by(
      const std::vector<Matrix>& generators, Index dim,
      const Tolerance& tol = {}, unsigned long seed = 7);

  Index dim() const { return dim_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Matrix& basis_change() const { return basis_change_; }
  /** Σ n_b², the linear dimension of 𝓜. */
  Index linear_dim() const;
  bool is_full() const { return full_; }

  /** Distance ‖x − 𝓔(x)‖ and whether it is within `tol`. */
  CheckReport contains(const Matrix& x, double tol = 1e-9) const;

  /** Trace-preserving conditional expectation onto 𝓜. */
  Matrix conditional_expectation(const Matrix& x) const;

  FiniteVonNeumannAlgebra commutant() const;

  /** Matrix units of each summand, in (block, row, col) order. */
  const std::vector<Matrix>& basis() const { return basis_; }

  /** Coefficients of 𝓔(x) in `basis()`. */
  Vector coordinates(const Matrix& x) const;

  /** Σ c_k basis()_k */
  Matrix from_coordinates(const Vector& c) const;

  /** 𝓜 ⊗ B(C^dim_k) acting on C^dim ⊗ C^dim_k. */
  FiniteVonNeumannAlgebra tensor_with_full(Index dim_k) const;

  /** Same blocks and operator span (for double-commutant checks). */
  bool same_algebra(const FiniteVonNeumannAlgebra& other, double tol) const;

 private:
  void build_basis();
  Index offset(std::size_t b) const { return offsets_[b]; }

  Index dim_;
  std::vector<Block> blocks_;
  std::vector<Index> offsets_;
  Matrix basis_change_;
  std::vector<Matrix> basis_;
  bool full_ = false;
};

}  // namespace qdil
