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

#include <string>
#include <vector>

#include "qdil/linalg.hpp"

namespace qdil {

/**
 * An operator-valued kernel K : C × C → B(C^dim) on a finite, ordered index
 * set. Entries are stored densely; the lower triangle is K(c', c)*.
 */
class OperatorKernel {
 public:
  /** Fill from a generator K(i, j); checks Hermitian symmetry. */
  template <typename F>
  OperatorKernel(std::vector<std::string> labels, Index dim, F&& entry,
                 const Tolerance& tol = {})
      : labels_(std::move(labels)), dim_(dim) {
    std::size_t n = labels_.size();
    entries_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) entries_[i * n + j] = entry(i, j);
    check(tol);
  }

  /** From the upper triangle only (i <= j); lower triangle implied. */
  static OperatorKernel from_upper(std::vector<std::string> labels, Index dim,
                                   const std::vector<std::vector<Matrix>>& upper);

  /** K(c, c') = Λ(c)* Λ(c') */
  static OperatorKernel from_factors(std::vector<std::string> labels,
                                     const std::vector<Matrix>& lambda);

  const std::vector<std::string>& labels() const { return labels_; }
  Index dim() const { return dim_; }
  std::size_t size() const { return labels_.size(); }
  const Matrix& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * size() + j];
  }
  std::size_t index_of(const std::string& label) const;

  /** Block Gram matrix in label order. */
  Matrix gram() const;

  /** Same kernel with indices reordered: new position p holds old perm[p]. */
  OperatorKernel permuted(const std::vector<std::size_t>& perm) const;

 private:
  OperatorKernel() = default;
  void check(const Tolerance& tol) const;

  std::vector<std::string> labels_;
  Index dim_ = 0;
  std::vector<Matrix> entries_;
};

struct PositivityReport {
  bool positive = false;
  double min_eigenvalue = 0.0;
};

PositivityReport is_positive_definite(const OperatorKernel& k,
                                      const Tolerance& tol = {});

/** (L, Λ) with K(c, c') = Λ(c)* Λ(c'); L = C^dim_l. */
struct KolmogorovDecomposition {
  std::vector<std::string> labels;
  Index dim_h = 0;
  Index dim_l = 0;
  std::vector<Matrix> lambda;  // each dim_l × dim_h

  const Matrix& at(const std::string& label) const;
  /** [Λ(c_1) … Λ(c_n)] */
  Matrix stacked() const;
};

/** Throws KernelNotPositive (witness = min eigenvalue). */
KolmogorovDecomposition minimal_decomposition(const OperatorKernel& k,
                                              const Tolerance& tol = {});

struct KernelEquivalence {
  bool equivalent = false;
  Matrix u;
  double residual = 0.0;
  std::string reason;
};

/**
 * Unitary U with U Λ₁(c) = Λ₂(c) for every label c (matched by name).
 * Different dimensions give a non-equivalent report; equal dimensions
 * require both inputs to be minimal (InvalidArgument otherwise).
 */
KernelEquivalence unitary_equivalence(const KolmogorovDecomposition& d1,
                                      const KolmogorovDecomposition& d2,
                                      const OperatorKernel& k,
                                      const Tolerance& tol = {});

}  // namespace qdil
