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

#include "qdil/kolmogorov.hpp"

#include <algorithm>
#include <set>

#include "qdil/error.hpp"

namespace qdil {

void OperatorKernel::check(const Tolerance& tol) const {
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) {
    throw Error(ErrorKind::InvalidArgument, "kernel labels must be distinct");
  }
  double scale = 0.0;
  for (const auto& e : entries_) {
    if (e.rows() != dim_ || e.cols() != dim_) {
      throw Error(ErrorKind::Dimension, "kernel entry has wrong shape");
    }
    scale = std::max(scale, max_abs(e));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i; j < size(); ++j)
      worst = std::max(worst, max_abs((*this)(i, j) - (*this)(j, i).adjoint()));
  if (worst > tol.abs * (1.0 + scale)) {
    throw Error(ErrorKind::NotHermitian, "kernel violates K(c,c') = K(c',c)*",
                worst);
  }
}

OperatorKernel OperatorKernel::from_upper(
    std::vector<std::string> labels, Index dim,
    const std::vector<std::vector<Matrix>>& upper) {
  std::size_t n = labels.size();
  if (upper.size() != n) {
    throw Error(ErrorKind::Dimension, "kernel: upper triangle has wrong size");
  }
  for (std::size_t i = 0; i < n; ++i)
    if (upper[i].size() != n - i)
      throw Error(ErrorKind::Dimension, "kernel: upper triangle row has wrong size");
  return OperatorKernel(std::move(labels), dim, [&](std::size_t i, std::size_t j) {
    return i <= j ? upper[i][j - i] : Matrix(upper[j][i - j].adjoint());
  });
}

OperatorKernel OperatorKernel::from_factors(std::vector<std::string> labels,
                                            const std::vector<Matrix>& lambda) {
  if (lambda.size() != labels.size() || lambda.empty()) {
    throw Error(ErrorKind::Dimension, "kernel: one factor per label expected");
  }
  Index dim = lambda.front().cols();
  return OperatorKernel(std::move(labels), dim, [&](std::size_t i, std::size_t j) {
    return Matrix(lambda[i].adjoint() * lambda[j]);
  });
}

std::size_t OperatorKernel::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw Error(ErrorKind::UnknownLabel, "unknown kernel label '" + label + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

Matrix OperatorKernel::gram() const {
  Index n = static_cast<Index>(size());
  Matrix g(n * dim_, n * dim_);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      g.block(i * dim_, j * dim_, dim_, dim_) = (*this)(i, j);
  return g;
}

OperatorKernel OperatorKernel::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != size()) {
    throw Error(ErrorKind::Dimension, "kernel: permutation has wrong size");
  }
  OperatorKernel out;
  out.dim_ = dim_;
  for (auto p : perm) out.labels_.push_back(labels_.at(p));
  std::size_t n = size();
  out.entries_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.entries_[i * n + j] = (*this)(perm[i], perm[j]);
  return out;
}

PositivityReport is_positive_definite(const OperatorKernel& k, const Tolerance& tol) {
  if (k.size() == 0) return {true, 0.0};
  double lo = eigh(k.gram()).values.minCoeff();
  return {lo >= -tol.psd_slack, lo};
}

const Matrix& KolmogorovDecomposition::at(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw Error(ErrorKind::UnknownLabel, "unknown kernel label '" + label + "'");
  }
  return lambda[it - labels.begin()];
}

Matrix KolmogorovDecomposition::stacked() const {
  Matrix out(dim_l, dim_h * static_cast<Index>(lambda.size()));
  for (std::size_t i = 0; i < lambda.size(); ++i)
    out.middleCols(static_cast<Index>(i) * dim_h, dim_h) = lambda[i];
  return out;
}

KolmogorovDecomposition minimal_decomposition(const OperatorKernel& k,
                                              const Tolerance& tol) {
  PsdFactorization f;
  try {
    f = psd_factorize(k.gram(), k.dim(), tol);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotPsd) {
      throw Error(ErrorKind::KernelNotPositive, "kernel is not positive definite",
                  e.witness());
    }
    throw;
  }
  return {k.labels(), k.dim(), f.rank, std::move(f.factors)};
}

KernelEquivalence unitary_equivalence(const KolmogorovDecomposition& d1,
                                      const KolmogorovDecomposition& d2,
                                      const OperatorKernel& k,
                                      const Tolerance& tol) {
  KernelEquivalence out;
  if (d1.dim_l != d2.dim_l) {
    out.reason = "dimension mismatch: " + std::to_string(d1.dim_l) + " vs " +
                 std::to_string(d2.dim_l);
    out.residual = INFINITY;
    return out;
  }
  for (const auto* d : {&d1, &d2}) {
    Matrix s = d->stacked();
    Index r = numerical_rank(s * s.adjoint(), tol);
    if (r != d->dim_l) {
      throw Error(ErrorKind::InvalidArgument,
                  "unitary_equivalence: decomposition is not minimal",
                  static_cast<double>(d->dim_l - r));
    }
    for (std::size_t i = 0; i < k.size(); ++i)
      for (std::size_t j = 0; j < k.size(); ++j) {
        double e = max_abs(d->at(k.labels()[i]).adjoint() * d->at(k.labels()[j]) -
                           k(i, j));
        out.residual = std::max(out.residual, e);
      }
  }
  if (out.residual > tol.abs * 10) {
    out.reason = "decompositions do not reconstruct the kernel";
    return out;
  }
  // align columns by label, then solve the Procrustes problem U A ≈ B
  Matrix a(d1.dim_l, d1.dim_h * static_cast<Index>(k.size()));
  Matrix b(d2.dim_l, d2.dim_h * static_cast<Index>(k.size()));
  for (std::size_t i = 0; i < k.size(); ++i) {
    a.middleCols(static_cast<Index>(i) * k.dim(), k.dim()) = d1.at(k.labels()[i]);
    b.middleCols(static_cast<Index>(i) * k.dim(), k.dim()) = d2.at(k.labels()[i]);
  }
  if (d1.dim_l == 0) {
    out.equivalent = true;
    out.u = Matrix(0, 0);
    out.residual = 0.0;
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(b * a.adjoint(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.u = svd.matrixU() * svd.matrixV().adjoint();
  out.residual = max_abs(out.u * a - b);
  out.equivalent = out.residual <= tol.abs * 10;
  if (!out.equivalent) out.reason = "no unitary aligns the factors";
  return out;
}

}  // namespace qdil
