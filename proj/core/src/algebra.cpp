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

#include "qdil/algebra.hpp"

#include <cmath>
#include <random>

#include "qdil/error.hpp"

namespace qdil {

FiniteVonNeumannAlgebra::FiniteVonNeumannAlgebra(
    Index dim, std::vector<Block> blocks, Matrix basis_change,
    const Tolerance& tol)
    : dim_(dim), blocks_(std::move(blocks)), basis_change_(std::move(basis_change)) {
  if (dim <= 0 || blocks_.empty()) {
    throw Error(ErrorKind::Dimension, "algebra: empty dimension or blocks");
  }
  Index total = 0;
  for (const auto& b : blocks_) {
    if (b.n <= 0 || b.m <= 0) {
      throw Error(ErrorKind::Dimension, "algebra: block sizes must be positive");
    }
    offsets_.push_back(total);
    total += b.n * b.m;
  }
  if (total != dim) {
    throw Error(ErrorKind::Dimension,
                "algebra: block sizes do not add up to the dimension");
  }
  if (basis_change_.rows() != dim || basis_change_.cols() != dim) {
    throw Error(ErrorKind::Dimension, "algebra: basis_change has wrong shape");
  }
  auto u = is_unitary(basis_change_, tol.abs * 10);
  if (!u.ok) {
    throw Error(ErrorKind::InvalidArgument, "algebra: basis_change not unitary",
                u.residual);
  }
  full_ = blocks_.size() == 1 && blocks_[0].m == 1;
  build_basis();
}

FiniteVonNeumannAlgebra::FiniteVonNeumannAlgebra()
    : FiniteVonNeumannAlgebra(1, {{1, 1}}, Matrix::Identity(1, 1)) {}

FiniteVonNeumannAlgebra FiniteVonNeumannAlgebra::full(Index dim) {
  return {dim, {{dim, 1}}, Matrix::Identity(dim, dim)};
}

FiniteVonNeumannAlgebra FiniteVonNeumannAlgebra::scalars(Index dim) {
  return {dim, {{1, dim}}, Matrix::Identity(dim, dim)};
}

FiniteVonNeumannAlgebra FiniteVonNeumannAlgebra::diagonal(Index dim) {
  return {dim, std::vector<Block>(dim, Block{1, 1}), Matrix::Identity(dim, dim)};
}

FiniteVonNeumannAlgebra FiniteVonNeumannAlgebra::block_diagonal(
    std::vector<Block> blocks) {
  Index dim = 0;
  for (const auto& b : blocks) dim += b.n * b.m;
  return {dim, std::move(blocks), Matrix::Identity(dim, dim)};
}

Index FiniteVonNeumannAlgebra::linear_dim() const {
  Index d = 0;
  for (const auto& b : blocks_) d += b.n * b.n;
  return d;
}

void FiniteVonNeumannAlgebra::build_basis() {
  basis_.clear();
  basis_.reserve(linear_dim());
  const Matrix& bc = basis_change_;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    auto [n, m] = blocks_[b];
    for (Index a = 0; a < n; ++a) {
      for (Index c = 0; c < n; ++c) {
        // B (E_ac ⊗ 1_m) B* = Σ_μ |col(a, μ)⟩⟨col(c, μ)|
        Matrix e = Matrix::Zero(dim_, dim_);
        for (Index mu = 0; mu < m; ++mu) {
          e += bc.col(offset(b) + a * m + mu) *
               bc.col(offset(b) + c * m + mu).adjoint();
        }
        basis_.push_back(std::move(e));
      }
    }
  }
}

Vector FiniteVonNeumannAlgebra::coordinates(const Matrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) {
    throw Error(ErrorKind::Dimension, "algebra: operator has wrong dimension");
  }
  Vector c(linear_dim());
  if (full_ && basis_change_.isIdentity(0.0)) {
    for (Index a = 0; a < dim_; ++a)
      for (Index b = 0; b < dim_; ++b) c(a * dim_ + b) = x(a, b);
    return c;
  }
  Matrix xb = basis_change_.adjoint() * x * basis_change_;
  Index k = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    auto [n, m] = blocks_[b];
    for (Index a = 0; a < n; ++a) {
      for (Index cc = 0; cc < n; ++cc) {
        Complex acc = 0.0;
        for (Index mu = 0; mu < m; ++mu) {
          acc += xb(offset(b) + a * m + mu, offset(b) + cc * m + mu);
        }
        c(k++) = acc / static_cast<double>(m);
      }
    }
  }
  return c;
}

Matrix FiniteVonNeumannAlgebra::from_coordinates(const Vector& c) const {
  if (c.size() != linear_dim()) {
    throw Error(ErrorKind::Dimension, "algebra: coordinate vector has wrong size");
  }
  Matrix x = Matrix::Zero(dim_, dim_);
  for (Index k = 0; k < c.size(); ++k) {
    if (c(k) != Complex(0.0)) x += c(k) * basis_[k];
  }
  return x;
}

Matrix FiniteVonNeumannAlgebra::conditional_expectation(const Matrix& x) const {
  return from_coordinates(coordinates(x));
}

CheckReport FiniteVonNeumannAlgebra::contains(const Matrix& x, double tol) const {
  if (x.rows() != dim_ || x.cols() != dim_) {
    throw Error(ErrorKind::Dimension, "algebra: operator has wrong dimension");
  }
  if (full_) return {true, 0.0};
  double r = op_norm(x - conditional_expectation(x));
  return {r <= tol, r};
}

FiniteVonNeumannAlgebra FiniteVonNeumannAlgebra::commutant() const {
  std::vector<Block> swapped;
  Matrix bc(dim_, dim_);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    auto [n, m] = blocks_[b];
    swapped.push_back({m, n});
    // new in-block index μ * n + a holds old column a * m + μ
    for (Index a = 0; a < n; ++a)
      for (Index mu = 0; mu < m; ++mu)
        bc.col(offset(b) + mu * n + a) = basis_change_.col(offset(b) + a * m + mu);
  }
  return {dim_, std::move(swapped), std::move(bc)};
}

FiniteVonNeumannAlgebra FiniteVonNeumannAlgebra::tensor_with_full(
    Index dim_k) const {
  if (dim_k <= 0) {
    throw Error(ErrorKind::Dimension, "tensor_with_full: dim_k must be positive");
  }
  Matrix big = tensor(basis_change_, Matrix::Identity(dim_k, dim_k));
  Matrix bc(dim_ * dim_k, dim_ * dim_k);
  std::vector<Block> blocks;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    auto [n, m] = blocks_[b];
    blocks.push_back({n * dim_k, m});
    Index off_new = offset(b) * dim_k;
    for (Index a = 0; a < n; ++a)
      for (Index kk = 0; kk < dim_k; ++kk)
        for (Index mu = 0; mu < m; ++mu)
          bc.col(off_new + (a * dim_k + kk) * m + mu) =
              big.col((offset(b) + a * m + mu) * dim_k + kk);
  }
  return {dim_ * dim_k, std::move(blocks), std::move(bc)};
}

bool FiniteVonNeumannAlgebra::same_algebra(
    const FiniteVonNeumannAlgebra& other, double tol) const {
  if (other.dim_ != dim_ || other.blocks_ != blocks_) return false;
  for (const auto& e : basis_) {
    if (!other.contains(e, tol).ok) return false;
  }
  for (const auto& e : other.basis_) {
    if (!contains(e, tol).ok) return false;
  }
  return true;
}

namespace {

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, Index dim) {
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

// Orthonormal basis of span{vec(ops)}, as matrices.
std::vector<Matrix> span_basis(const std::vector<Matrix>& ops, Index dim,
                               const Tolerance& tol) {
  Matrix cols(dim * dim, static_cast<Index>(ops.size()));
  for (std::size_t i = 0; i < ops.size(); ++i) cols.col(i) = vec(ops[i]);
  Matrix q = orthonormal_range(cols, tol);
  std::vector<Matrix> out;
  for (Index i = 0; i < q.cols(); ++i) out.push_back(unvec(q.col(i), dim));
  return out;
}

// Group ascending eigenvalues into clusters; returns spectral projections'
// range bases as column blocks of `vectors`.
std::vector<Matrix> eigen_clusters(const HermitianEigen& eig, double gap) {
  std::vector<Matrix> out;
  Index start = 0;
  Index n = eig.values.size();
  for (Index i = 1; i <= n; ++i) {
    if (i == n || eig.values(i) - eig.values(i - 1) > gap) {
      out.push_back(eig.vectors.middleCols(start, i - start));
      start = i;
    }
  }
  return out;
}

Matrix random_combination(const std::vector<Matrix>& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix x = Matrix::Zero(basis.front().rows(), basis.front().cols());
  for (const auto& b : basis) x += Complex(g(rng), g(rng)) * b;
  return x;
}

}  // namespace

FiniteVonNeumannAlgebra FiniteVonNeumannAlgebra::generated_by(
    const std::vector<Matrix>& generators, Index dim, const Tolerance& tol,
    unsigned long seed) {
  std::vector<Matrix> ops{Matrix::Identity(dim, dim)};
  for (const auto& g : generators) {
    if (g.rows() != dim || g.cols() != dim) {
      throw Error(ErrorKind::Dimension, "generated_by: generator has wrong size");
    }
    ops.push_back(g);
    ops.push_back(g.adjoint());
  }
  auto basis = span_basis(ops, dim, tol);
  for (;;) {
    std::vector<Matrix> grown = basis;
    for (const auto& a : basis)
      for (const auto& b : basis) grown.push_back(a * b);
    auto next = span_basis(grown, dim, tol);
    if (next.size() == basis.size()) break;
    basis = std::move(next);
  }

  // centre: z = Σ c_j A_j with [z, A_k] = 0 for every k
  Index nb = static_cast<Index>(basis.size());
  Matrix sys(dim * dim * nb, nb);
  for (Index j = 0; j < nb; ++j)
    for (Index k = 0; k < nb; ++k)
      sys.block(k * dim * dim, j, dim * dim, 1) =
          vec(basis[j] * basis[k] - basis[k] * basis[j]);
  Eigen::JacobiSVD<Matrix> svd(sys, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  double cutoff = std::sqrt(tol.abs) * (1.0 + (s.size() ? s(0) : 0.0));
  std::vector<Matrix> centre;
  for (Index j = 0; j < nb; ++j) {
    double sj = j < s.size() ? s(j) : 0.0;
    if (sj <= cutoff) {
      Matrix z = Matrix::Zero(dim, dim);
      for (Index i = 0; i < nb; ++i) z += svd.matrixV()(i, j) * basis[i];
      centre.push_back(z);
    }
  }

  std::mt19937_64 rng(seed);
  const double gap = 1e-6;
  Matrix zc = random_combination(centre, rng);
  auto central = eigen_clusters(eigh(zc + zc.adjoint()), gap);

  std::vector<Block> blocks;
  Matrix bc(dim, dim);
  Index col = 0;
  for (const Matrix& range : central) {
    Matrix p = range * range.adjoint();
    std::vector<Matrix> local;
    for (const auto& a : basis) local.push_back(p * a * p);
    local = span_basis(local, dim, tol);
    Index n = static_cast<Index>(std::llround(std::sqrt(double(local.size()))));
    if (n * n != static_cast<Index>(local.size()) || range.cols() % n != 0) {
      throw Error(ErrorKind::InvalidArgument,
                  "generated_by: could not resolve a factor summand");
    }
    Index m = range.cols() / n;
    Matrix h = random_combination(local, rng);
    h = range.adjoint() * (h + h.adjoint()) * range;
    auto minimal = eigen_clusters(eigh(h), gap);
    if (static_cast<Index>(minimal.size()) != n) {
      throw Error(ErrorKind::InvalidArgument,
                  "generated_by: degenerate spectrum, retry with another seed");
    }
    std::vector<Matrix> proj;
    for (const auto& r : minimal) {
      Matrix full_r = range * r;
      proj.push_back(full_r * full_r.adjoint());
    }
    Matrix f0 = range * minimal[0];
    Matrix x = random_combination(local, rng);
    for (Index a = 0; a < n; ++a) {
      Matrix w = proj[a] * x * proj[0];
      if (a == 0) w = proj[0];
      double scale = op_norm(w);
      for (Index mu = 0; mu < m; ++mu) {
        Vector v = w * f0.col(mu) / scale;
        bc.col(col + a * m + mu) = v / v.norm();
      }
    }
    blocks.push_back({n, m});
    col += n * m;
  }
  return {dim, std::move(blocks), std::move(bc), Tolerance{1e-6, tol.psd_slack}};
}

}  // namespace qdil
