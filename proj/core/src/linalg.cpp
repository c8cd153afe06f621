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

#include "qdil/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdil/error.hpp"

namespace qdil {

void Tolerance::validate() const {
  if (!(abs > 0.0) || !(psd_slack > 0.0)) {
    throw Error(
        ErrorKind::InvalidArgument, "tolerances must be strictly positive");
  }
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void require_state(const Matrix& rho, const Tolerance& tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw Error(ErrorKind::NotState, "density matrix must be square");
  }
  double herm = hermiticity_residual(rho);
  if (herm > tol.abs) {
    throw Error(ErrorKind::NotState, "density matrix is not Hermitian", herm);
  }
  double tr_err = std::abs(rho.trace() - Complex(1.0));
  if (tr_err > tol.abs) {
    throw Error(ErrorKind::NotState, "density matrix trace differs from 1",
                tr_err);
  }
  double lo = eigh(rho).values.minCoeff();
  if (lo < -tol.psd_slack) {
    throw Error(ErrorKind::NotState, "density matrix has negative eigenvalue",
                lo);
  }
}

Matrix compress_by_state(
    const Matrix& x, const Matrix& sigma, Index dim_h, Index dim_k,
    const Tolerance& tol) {
  if (x.rows() != dim_h * dim_k || x.cols() != dim_h * dim_k ||
      sigma.rows() != dim_k || sigma.cols() != dim_k) {
    throw Error(ErrorKind::Dimension, "compress_by_state: shape mismatch");
  }
  require_state(sigma, tol);
  // Y_ij = Σ_{k,l} σ_lk X_{(i,k),(j,l)}
  Matrix y = Matrix::Zero(dim_h, dim_h);
  for (Index i = 0; i < dim_h; ++i) {
    for (Index j = 0; j < dim_h; ++j) {
      y(i, j) = (x.block(i * dim_k, j * dim_k, dim_k, dim_k).cwiseProduct(
                     sigma.transpose()))
                    .sum();
    }
  }
  return y;
}

HermitianEigen eigh(const Matrix& a) {
  Matrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

double hermiticity_residual(const Matrix& a) {
  if (a.rows() != a.cols()) return INFINITY;
  if (a.size() == 0) return 0.0;
  return op_norm(a - a.adjoint());
}

Matrix sqrt_psd(const Matrix& a, const Tolerance& tol) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::Dimension, "sqrt_psd: matrix must be square");
  }
  double herm = hermiticity_residual(a);
  if (herm > tol.abs) {
    throw Error(ErrorKind::NotHermitian, "sqrt_psd: input not Hermitian", herm);
  }
  if (a.size() == 0) return a;
  auto eig = eigh(a);
  double lo = eig.values.minCoeff();
  if (lo < -tol.psd_slack) {
    throw Error(ErrorKind::NotPsd, "sqrt_psd: negative eigenvalue", lo);
  }
  RealVector root = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * root.cast<Complex>().asDiagonal() *
         eig.vectors.adjoint();
}

PsdFactorization psd_factorize(const Matrix& g, Index block,
                               const Tolerance& tol) {
  if (block <= 0 || g.rows() != g.cols() || g.rows() % block != 0) {
    throw Error(ErrorKind::Dimension, "psd_factorize: bad block structure");
  }
  double herm = hermiticity_residual(g);
  if (herm > tol.abs * (1.0 + op_norm(g))) {
    throw Error(ErrorKind::NotHermitian, "psd_factorize: Gram not Hermitian",
                herm);
  }
  PsdFactorization out;
  Index nb = g.rows() / block;
  if (g.size() == 0) {
    out.factors.assign(nb, Matrix(0, block));
    return out;
  }
  auto eig = eigh(g);
  out.min_eigenvalue = eig.values.minCoeff();
  if (out.min_eigenvalue < -tol.psd_slack) {
    throw Error(ErrorKind::NotPsd, "psd_factorize: Gram has negative eigenvalue",
                out.min_eigenvalue);
  }
  double cutoff = tol.abs * (1.0 + eig.values.cwiseAbs().maxCoeff());
  std::vector<Index> keep;
  for (Index k = eig.values.size() - 1; k >= 0; --k) {
    if (eig.values(k) > cutoff) keep.push_back(k);
  }
  out.rank = static_cast<Index>(keep.size());
  Matrix lambda(out.rank, g.cols());
  for (Index r = 0; r < out.rank; ++r) {
    lambda.row(r) =
        std::sqrt(eig.values(keep[r])) * eig.vectors.col(keep[r]).adjoint();
  }
  out.factors.reserve(nb);
  for (Index i = 0; i < nb; ++i) {
    out.factors.push_back(lambda.middleCols(i * block, block));
  }
  return out;
}

double op_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == 1 || a.cols() == 1) return a.norm();
  // singular values only; vectors from BDCSVD are not trusted (see orthonormal_range)
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double max_op_norm(double current, const Matrix& a) {
  if (a.norm() <= current) return current;
  return std::max(current, op_norm(a));
}

double max_abs(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

Index numerical_rank(const Matrix& hermitian, const Tolerance& tol) {
  if (hermitian.size() == 0) return 0;
  auto eig = eigh(hermitian);
  double cutoff = tol.abs * (1.0 + eig.values.cwiseAbs().maxCoeff());
  return (eig.values.array() > cutoff).count();
}

Matrix orthonormal_range(const Matrix& a, const Tolerance& tol) {
  if (a.cols() == 0 || a.rows() == 0) return Matrix(a.rows(), 0);
  // BDCSVD in Eigen 3.4.0 can return a wrong U when singular values are
  // repeated (e.g. projections); Jacobi is slower but reliable.
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  double cutoff = tol.abs * (1.0 + s(0));
  Index r = (s.array() > cutoff).count();
  return svd.matrixU().leftCols(r);
}

Matrix complete_basis(const Vector& v) {
  Index n = v.size();
  Matrix seed(n, n + 1);
  seed.col(0) = v;
  seed.rightCols(n) = Matrix::Identity(n, n);
  Eigen::HouseholderQR<Matrix> qr(seed);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  // first column equals v up to phase; pin it to v exactly.
  q.col(0) = v;
  return q;
}

Vector normalize_phase(const Vector& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      Complex phase = std::conj(v(i)) / std::abs(v(i));
      return v * phase;
    }
  }
  return v;
}

namespace {

/** ‖h‖ for Hermitian h, from its eigenvalues (cheaper than an SVD). */
double hermitian_norm(const Matrix& h) {
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

CheckReport is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return {false, INFINITY};
  // for square u, u*u and uu* share their spectrum, so one side suffices
  return is_isometry(u, tol);
}

CheckReport is_isometry(const Matrix& v, double tol) {
  Matrix g = v.adjoint() * v;
  g.diagonal().array() -= 1.0;
  double r = hermitian_norm(g);
  return {r <= tol, r};
}

CheckReport is_projection(const Matrix& p, double tol) {
  if (p.rows() != p.cols()) return {false, INFINITY};
  double r = std::max(op_norm(p * p - p), hermiticity_residual(p));
  return {r <= tol, r};
}

PvmReport is_pvm(const std::vector<Matrix>& family, double tol) {
  PvmReport rep;
  if (family.empty()) return rep;
  Index n = family.front().rows();
  Matrix sum = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Matrix& p = family[i];
    if (p.rows() != n || p.cols() != n) {
      rep.completeness = INFINITY;
      return rep;
    }
    sum += p;
    rep.idempotence = max_op_norm(rep.idempotence, p * p - p);
    rep.hermiticity = std::max(rep.hermiticity, hermiticity_residual(p));
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      rep.orthogonality =
          max_op_norm(rep.orthogonality, p * family[j]);
    }
  }
  rep.completeness = op_norm(sum - Matrix::Identity(n, n));
  rep.ok = rep.completeness <= tol && rep.idempotence <= tol &&
           rep.orthogonality <= tol && rep.hermiticity <= tol;
  return rep;
}

Matrix apply_left_factor(const Matrix& m, const Matrix& x, Index dim_k) {
  Index dim_h = m.cols();
  Matrix out(m.rows() * dim_k, x.cols());
  Matrix mt = m.transpose();
  for (Index c = 0; c < x.cols(); ++c) {
    Eigen::Map<const Matrix> z(x.col(c).data(), dim_k, dim_h);
    Eigen::Map<Matrix> w(out.col(c).data(), dim_k, m.rows());
    w.noalias() = z * mt;
  }
  return out;
}

Matrix apply_right_factor(const Matrix& e, const Matrix& x, Index dim_h) {
  Index dim_k = e.cols();
  Matrix out(dim_h * e.rows(), x.cols());
  for (Index c = 0; c < x.cols(); ++c) {
    Eigen::Map<const Matrix> z(x.col(c).data(), dim_k, dim_h);
    Eigen::Map<Matrix> w(out.col(c).data(), e.rows(), dim_h);
    w.noalias() = e * z;
  }
  return out;
}

Matrix apply_product(const Matrix& m, const Matrix& e, const Matrix& x) {
  Index dim_h = m.cols();
  Index dim_k = e.cols();
  Matrix out(m.rows() * e.rows(), x.cols());
  Matrix mt = m.transpose();
  for (Index c = 0; c < x.cols(); ++c) {
    Eigen::Map<const Matrix> z(x.col(c).data(), dim_k, dim_h);
    Eigen::Map<Matrix> w(out.col(c).data(), e.rows(), m.rows());
    w.noalias() = e * z * mt;
  }
  return out;
}

Matrix matrix_unit(Index n, Index i, Index j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

}  // namespace qdil
