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

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qdil {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/**
 * Numerical thresholds used throughout.
 *
 * `abs` is an operator-norm tolerance; `psd_slack` is how far below zero an
 * eigenvalue may sit before a matrix stops counting as positive.
 */
struct Tolerance {
  double abs = 1e-9;
  double psd_slack = 1e-10;

  /** Throws InvalidArgument unless both fields are strictly positive. */
  void validate() const;
};

/** Kronecker product a ⊗ b; index (i, k) of the result is i * b.rows() + k. */
Matrix tensor(const Matrix& a, const Matrix& b);

/**
 * Slice an operator on H ⊗ K by an ancilla state: returns the unique Y on H
 * with tr(ρ Y) = tr((ρ ⊗ σ) X) for every ρ.
 */
Matrix compress_by_state(
    const Matrix& x, const Matrix& sigma, Index dim_h, Index dim_k,
    const Tolerance& tol = {});

/** Positive square root; eigenvalues in [-psd_slack, 0) are clamped. */
Matrix sqrt_psd(const Matrix& a, const Tolerance& tol = {});

struct PsdFactorization {
  Index rank = 0;
  /** Factors Λ_i (rank × block) with Λ_i* Λ_j = G_ij. */
  std::vector<Matrix> factors;
  double min_eigenvalue = 0.0;
};

/**
 * Factor a block Gram matrix through a space of minimal dimension.
 *
 * Rank counts eigenvalues above tol.abs * (1 + ‖G‖). Throws NotPsd when the
 * smallest eigenvalue is below -psd_slack.
 */
PsdFactorization psd_factorize(
    const Matrix& g, Index block, const Tolerance& tol = {});

/** Eigendecomposition of the Hermitian part, ascending eigenvalues. */
struct HermitianEigen {
  RealVector values;
  Matrix vectors;
};
HermitianEigen eigh(const Matrix& a);

double op_norm(const Matrix& a);
/**
 * max(current, ‖a‖), skipping the SVD when ‖a‖_F ≤ current (‖a‖ ≤ ‖a‖_F),
 * so running maxima over many residuals stay exact but cheap.
 */
double max_op_norm(double current, const Matrix& a);
double max_abs(const Matrix& a);
double hermiticity_residual(const Matrix& a);

Index numerical_rank(const Matrix& hermitian, const Tolerance& tol = {});

/** Orthonormal basis (columns) of the column space of `a`. */
Matrix orthonormal_range(const Matrix& a, const Tolerance& tol = {});

/** Orthonormal basis whose first column is the unit vector `v`. */
Matrix complete_basis(const Vector& v);

/** Rescale so the first entry of magnitude > 1e-12 is real and positive. */
Vector normalize_phase(const Vector& v);

struct CheckReport {
  bool ok = false;
  double residual = 0.0;
};

CheckReport is_unitary(const Matrix& u, double tol = 1e-9);
CheckReport is_isometry(const Matrix& v, double tol = 1e-9);
CheckReport is_projection(const Matrix& p, double tol = 1e-9);

struct PvmReport {
  bool ok = false;
  double completeness = 0.0;
  double idempotence = 0.0;
  double orthogonality = 0.0;
  double hermiticity = 0.0;
};

PvmReport is_pvm(const std::vector<Matrix>& family, double tol = 1e-9);

/** Throws NotState unless rho is Hermitian, PSD (within slack), trace one. */
void require_state(const Matrix& rho, const Tolerance& tol = {});

// Cheap actions on H ⊗ K without forming the Kronecker product; columns of
// `x` are vectors in H ⊗ K with index h * dim_k + k.

/** (m ⊗ 1_K) x */
Matrix apply_left_factor(const Matrix& m, const Matrix& x, Index dim_k);
/** (1_H ⊗ e) x */
Matrix apply_right_factor(const Matrix& e, const Matrix& x, Index dim_h);
/** (m ⊗ e) x */
Matrix apply_product(const Matrix& m, const Matrix& e, const Matrix& x);

/** Matrix unit |i⟩⟨j| of size n. */
Matrix matrix_unit(Index n, Index i, Index j);

}  // namespace qdil
