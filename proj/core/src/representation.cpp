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

#include "qdil/representation.hpp"

#include <algorithm>

#include "qdil/error.hpp"

namespace qdil {

Representation Representation::from_function(
    const FiniteVonNeumannAlgebra& algebra, Index dim,
    const std::function<Matrix(const Matrix&)>& f) {
  Representation r{algebra, dim, {}};
  r.images.reserve(algebra.basis().size());
  for (const auto& b : algebra.basis()) r.images.push_back(f(b));
  return r;
}

Matrix Representation::operator()(const Matrix& x) const {
  Vector c = algebra.coordinates(x);
  Matrix out = Matrix::Zero(dim, dim);
  for (Index k = 0; k < c.size(); ++k)
    if (c(k) != Complex(0.0)) out += c(k) * images[k];
  return out;
}

Matrix Representation::unit() const {
  return (*this)(Matrix::Identity(algebra.dim(), algebra.dim()));
}

Representation::Report Representation::check() const {
  Report rep;
  // basis index of (block b, row a, col c) is base[b] + a * n_b + c
  std::vector<Index> base;
  Index acc = 0;
  for (const auto& b : algebra.blocks()) {
    base.push_back(acc);
    acc += b.n * b.n;
  }
  Matrix zero = Matrix::Zero(dim, dim);
  for (std::size_t b = 0; b < algebra.blocks().size(); ++b) {
    Index n = algebra.blocks()[b].n;
    for (Index a = 0; a < n; ++a) {
      for (Index c = 0; c < n; ++c) {
        const Matrix& x = images[base[b] + a * n + c];
        rep.star = max_op_norm(rep.star, x.adjoint() - images[base[b] + c * n + a]);
        for (std::size_t b2 = 0; b2 < algebra.blocks().size(); ++b2) {
          Index n2 = algebra.blocks()[b2].n;
          for (Index a2 = 0; a2 < n2; ++a2) {
            for (Index c2 = 0; c2 < n2; ++c2) {
              const Matrix& y = images[base[b2] + a2 * n2 + c2];
              bool hit = b == b2 && c == a2;
              const Matrix& want = hit ? images[base[b] + a * n + c2] : zero;
              rep.multiplicativity =
                  max_op_norm(rep.multiplicativity, x * y - want);
            }
          }
        }
      }
    }
  }
  rep.unit = op_norm(unit() - Matrix::Identity(dim, dim));
  return rep;
}

namespace {

// v ξ = Σ_a K_a ξ ⊗ e_a on H ⊗ C^r
Matrix stack_kraus(const KrausFamily& kraus, Index dim) {
  Index r = static_cast<Index>(kraus.size());
  Matrix v(dim * r, dim);
  for (Index a = 0; a < r; ++a)
    for (Index h = 0; h < dim; ++h) v.row(h * r + a) = kraus[a].row(h);
  return v;
}

}  // namespace

Stinespring minimal_stinespring_from_choi(const Matrix& choi, Index dim,
                                          const Tolerance& tol) {
  KrausFamily kraus = kraus_from_choi(choi, dim, tol);
  Index r = static_cast<Index>(kraus.size());
  auto alg = FiniteVonNeumannAlgebra::full(dim);
  Matrix id_r = Matrix::Identity(r, r);
  Stinespring out;
  out.dim_k = dim * r;
  out.pi = Representation::from_function(
      alg, dim * r, [&](const Matrix& m) { return tensor(m, id_r); });
  out.v = stack_kraus(kraus, dim);
  return out;
}

Stinespring minimal_stinespring(const KrausFamily& kraus, Index dim,
                                const Tolerance& tol) {
  for (const auto& k : kraus)
    if (k.rows() != dim || k.cols() != dim)
      throw Error(ErrorKind::Dimension, "Kraus operator has wrong shape");
  Matrix choi = heisenberg_choi(
      [&](const Matrix& m) { return apply_kraus(kraus, m); }, dim);
  return minimal_stinespring_from_choi(choi, dim, tol);
}

Matrix InstrumentRepresentation::reconstruct(const Matrix& m, std::size_t atom) const {
  return v.adjoint() * pi0(m) * e0.at(atom) * v;
}

InstrumentRepresentation instrument_representation(const CPInstrument& inst,
                                                   const Tolerance& tol) {
  inst.validate(tol);
  Index n = inst.dim();
  const auto& alg = inst.algebra();
  std::size_t atoms = inst.outcomes().size();

  std::vector<std::vector<Matrix>> local_images(atoms);
  std::vector<Matrix> local_v(atoms);
  std::vector<Index> dims(atoms, 0);
  auto chois = inst.choi();
  for (std::size_t s = 0; s < atoms; ++s) {
    KrausFamily kraus = kraus_from_choi(chois[s], n, tol);
    Index r = static_cast<Index>(kraus.size());
    if (r == 0) continue;
    Matrix v = stack_kraus(kraus, n);
    Matrix id_r = Matrix::Identity(r, r);
    Matrix omega;
    if (alg.is_full()) {
      omega = Matrix::Identity(n * r, n * r);
    } else {
      // π(𝓜)-cyclic subspace generated by v H
      Matrix gen(n * r, n * static_cast<Index>(alg.basis().size()));
      for (std::size_t k = 0; k < alg.basis().size(); ++k)
        gen.middleCols(static_cast<Index>(k) * n, n) =
            apply_left_factor(alg.basis()[k], v, r);
      omega = orthonormal_range(gen, tol);
    }
    dims[s] = omega.cols();
    local_v[s] = omega.adjoint() * v;
    for (const auto& b : alg.basis())
      local_images[s].push_back(omega.adjoint() * tensor(b, id_r) * omega);
  }

  InstrumentRepresentation out;
  out.atom_dims = dims;
  for (auto d : dims) out.dim_k += d;
  Index dk = out.dim_k;
  out.v = Matrix::Zero(dk, n);
  out.pi0 = Representation{alg, dk, {}};
  for (std::size_t k = 0; k < alg.basis().size(); ++k)
    out.pi0.images.push_back(Matrix::Zero(dk, dk));
  Index off = 0;
  for (std::size_t s = 0; s < atoms; ++s) {
    Matrix e = Matrix::Zero(dk, dk);
    Index d = dims[s];
    if (d > 0) {
      e.block(off, off, d, d).setIdentity();
      out.v.middleRows(off, d) = local_v[s];
      for (std::size_t k = 0; k < alg.basis().size(); ++k)
        out.pi0.images[k].block(off, off, d, d) = local_images[s][k];
    }
    out.e0.push_back(std::move(e));
    off += d;
  }
  return out;
}

MultiplicitySplit multiplicity_split(const Representation& pi, const Tolerance& tol) {
  const auto& alg = pi.algebra;
  if (!alg.is_full()) {
    throw Error(ErrorKind::InvalidArgument,
                "multiplicity_split needs a representation of the full algebra");
  }
  Index n = alg.dim();
  Index dl = pi.dim;
  if (dl % n != 0) {
    throw Error(ErrorKind::NotRepresentation,
                "representation dimension is not a multiple of dim H");
  }
  std::vector<Matrix> e_i0;
  for (Index i = 0; i < n; ++i) e_i0.push_back(pi(matrix_unit(n, i, 0)));
  auto eig = eigh(e_i0[0]);
  std::vector<Index> keep;
  for (Index j = 0; j < eig.values.size(); ++j)
    if (eig.values(j) > 0.5) keep.push_back(j);
  Index k = static_cast<Index>(keep.size());
  MultiplicitySplit out;
  out.dim_k = k;
  if (n * k != dl) {
    throw Error(ErrorKind::NotRepresentation,
                "π(E_00) has the wrong rank for a representation",
                static_cast<double>(n * k - dl));
  }
  Matrix u1_star(dl, n * k);
  for (Index i = 0; i < n; ++i)
    for (Index mu = 0; mu < k; ++mu)
      u1_star.col(i * k + mu) = e_i0[i] * eig.vectors.col(keep[mu]);
  out.u1 = u1_star.adjoint();
  double worst = is_unitary(out.u1).residual;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Matrix e = matrix_unit(n, i, j);
      Matrix lifted = u1_star * apply_left_factor(e, out.u1, k);
      worst = max_op_norm(worst, pi(e) - lifted);
    }
  out.residual = worst;
  if (worst > tol.abs) {
    throw Error(ErrorKind::NotRepresentation,
                "multiplicity_split: input is not a *-representation", worst);
  }
  return out;
}

PvmLift commutant_pvm_lift(const std::vector<Matrix>& projections,
                           const Matrix& u2, Index dim_h, const Tolerance& tol) {
  Index dl = u2.cols();
  if (u2.rows() != dl || dl % dim_h != 0) {
    throw Error(ErrorKind::Dimension, "commutant_pvm_lift: bad unitary shape");
  }
  Index dk = dl / dim_h;
  PvmLift out;
  for (Index i = 0; i < dim_h; ++i) {
    for (Index j = 0; j < dim_h; ++j) {
      Matrix x = u2.adjoint() * apply_left_factor(matrix_unit(dim_h, i, j), u2, dk);
      for (const auto& p : projections) {
        if (p.rows() != dl || p.cols() != dl) {
          throw Error(ErrorKind::Dimension, "commutant_pvm_lift: projection shape");
        }
        out.commutation_residual =
            max_op_norm(out.commutation_residual, p * x - x * p);
      }
    }
  }
  if (out.commutation_residual > tol.abs) {
    throw Error(ErrorKind::NotRepresentation,
                "commutant_pvm_lift: projections do not commute with the algebra",
                out.commutation_residual);
  }
  for (const auto& p : projections) {
    Matrix t = u2 * p * u2.adjoint();
    Matrix e = Matrix::Zero(dk, dk);
    for (Index i = 0; i < dim_h; ++i) e += t.block(i * dk, i * dk, dk, dk);
    e /= static_cast<double>(dim_h);
    out.form_residual =
        max_op_norm(out.form_residual, t - tensor(Matrix::Identity(dim_h, dim_h), e));
    out.e0.push_back(std::move(e));
  }
  if (out.form_residual > tol.abs) {
    throw Error(ErrorKind::NotRepresentation,
                "commutant_pvm_lift: transported projection is not of the form 1 ⊗ E",
                out.form_residual);
  }
  return out;
}

IntertwinerVector intertwiner_vector(const Matrix& v, Index dim_h,
                                     const Tolerance& tol) {
  if (v.cols() != dim_h || v.rows() % dim_h != 0) {
    throw Error(ErrorKind::Dimension, "intertwiner_vector: bad isometry shape");
  }
  Index dl = v.rows() / dim_h;
  IntertwinerVector out;
  out.eta = v.block(0, 0, dl, 1);
  out.residual = op_norm(v - tensor(Matrix::Identity(dim_h, dim_h), out.eta));
  if (out.residual > tol.abs) {
    throw Error(ErrorKind::NotRepresentation,
                "intertwiner_vector: V is not of the form ξ ↦ ξ ⊗ η", out.residual);
  }
  return out;
}

}  // namespace qdil
