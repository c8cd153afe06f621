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

#include "qdil/dilation.hpp"

#include <algorithm>

#include "qdil/error.hpp"
#include "qdil/random.hpp"
#include "qdil/representation.hpp"

namespace qdil {

Matrix halmos_unitary(const Matrix& t) {
  Index d = t.rows();
  if (t.cols() != d) throw Error(ErrorKind::Dimension, "halmos_unitary: square input expected");
  Matrix id = Matrix::Identity(d, d);
  Matrix u = Matrix::Zero(2 * d, 2 * d);
  // index (x, g) ↦ 2x + g
  auto put = [&](const Matrix& block, Index a, Index b) {
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) u(2 * i + a, 2 * j + b) += block(i, j);
  };
  put(t, 0, 0);
  put(id - t * t.adjoint(), 0, 1);
  put(id - t.adjoint() * t, 1, 0);
  put(-t.adjoint(), 1, 1);
  return u;
}

namespace {

void require(double residual, double tol, const std::string& what) {
  if (residual > tol) {
    throw Error(ErrorKind::NotRepresentation, what + " residual beyond tolerance",
                residual);
  }
}

}  // namespace

MpConstruction mp_from_correlations(const CorrelationSystem& sys,
                                    const CorrelationDilationOptions& options,
                                    const Tolerance& tol) {
  if (!sys.algebra().is_full()) {
    throw Error(ErrorKind::InvalidArgument,
                "mp_from_correlations needs the full algebra B(H)");
  }
  auto inv = sys.check_invariants();
  MpConstruction out;
  out.residuals["system.representation"] = inv.representation;
  out.residuals["system.pvm"] = inv.pvm;
  out.residuals["system.intertwining"] = inv.intertwining;
  out.residuals["system.closure"] = inv.closure;
  require(std::max({inv.representation, inv.pvm, inv.intertwining, inv.closure}),
          tol.abs, "system invariant");

  const Index n = sys.dim();
  const std::size_t atoms = sys.outcomes().size();

  // Π_in ≅ X ⊗ 1 on H ⊗ L₁, Π_S ≅ X ⊗ 1 on H ⊗ L₂
  auto split_in = multiplicity_split(sys.pi_in(), tol);
  Representation pi_s{sys.algebra(), sys.dim_l(), {}};
  for (std::size_t k = 0; k < sys.algebra().basis().size(); ++k) {
    Matrix sum = Matrix::Zero(sys.dim_l(), sys.dim_l());
    for (std::size_t s = 0; s < atoms; ++s) sum += sys.pi_atom(s).images[k];
    pi_s.images.push_back(std::move(sum));
  }
  auto split_s = multiplicity_split(pi_s, tol);
  out.residuals["split.in"] = split_in.residual;
  out.residuals["split.S"] = split_s.residual;
  const Index l1 = split_in.dim_k;
  const Index l2 = split_s.dim_k;
  if (l1 != l2) {
    // both split the same space L over H, so this cannot happen for a valid system
    throw Error(ErrorKind::NotRepresentation, "multiplicity spaces differ in size");
  }

  std::vector<Matrix> units;
  for (std::size_t s = 0; s < atoms; ++s) units.push_back(sys.pi_atom(s).unit());
  auto lift = commutant_pvm_lift(units, split_s.u1, n, tol);
  out.residuals["pointer.commutation"] = lift.commutation_residual;
  out.residuals["pointer.form"] = lift.form_residual;

  auto iv = intertwiner_vector(split_in.u1 * sys.v(), n, tol);
  out.residuals["eta.intertwining"] = iv.residual;
  const Vector& eta1 = iv.eta;

  // U on H ⊗ L₁ ⊗ L₂, index (h, a, b) ↦ (h·l1 + a)·l2 + b
  const Index dk = l1 * l2;
  const Index big = n * dk;
  Matrix w = split_s.u1 * split_in.u1.adjoint();  // H⊗L₁ → H⊗L₂
  Matrix f = complete_basis(eta1);                // columns f_0 = η₁, f_1, …
  Matrix u = Matrix::Zero(big, big);
  auto index = [&](Index h, Index a, Index b) { return (h * l1 + a) * l2 + b; };

  // range of Q = H ⊗ L₁ ⊗ η₂ (η₂ = e_0) onto H ⊗ η₁ ⊗ L₂
  for (Index i = 0; i < n; ++i)
    for (Index a = 0; a < l1; ++a) {
      Index col = index(i, a, 0);
      for (Index j = 0; j < n; ++j)
        for (Index b = 0; b < l2; ++b) {
          Complex c = w(j * l2 + b, i * l1 + a);
          if (c == Complex(0.0)) continue;
          for (Index a2 = 0; a2 < l1; ++a2) u(index(j, a2, b), col) += c * eta1(a2);
        }
    }

  // completion between the orthocomplements, both listed lexicographically
  std::vector<Index> in_cols;
  for (Index i = 0; i < n; ++i)
    for (Index a = 0; a < l1; ++a)
      for (Index b = 1; b < l2; ++b) in_cols.push_back(index(i, a, b));
  Index m = static_cast<Index>(in_cols.size());
  Matrix targets(big, m);
  Index t = 0;
  for (Index j = 0; j < n; ++j)
    for (Index c = 1; c < l1; ++c)
      for (Index d = 0; d < l2; ++d) {
        Vector v = Vector::Zero(big);
        for (Index a2 = 0; a2 < l1; ++a2) v(index(j, a2, d)) = f(a2, c);
        targets.col(t++) = v;
      }
  if (t != m) {
    throw Error(ErrorKind::Dimension, "orthocomplement dimensions differ");
  }
  if (options.completion_seed) {
    Random rng(*options.completion_seed);
    targets = targets * rng.unitary(m);
    out.notes.push_back("completion twisted by seeded unitary " +
                        std::to_string(*options.completion_seed));
  } else {
    out.notes.push_back("completion: identity between canonical orthocomplement bases");
  }
  for (Index k = 0; k < m; ++k) u.col(in_cols[k]) = targets.col(k);

  out.residuals["u.unitary"] = is_unitary(u).residual;
  require(out.residuals["u.unitary"], tol.abs, "unitary");

  MeasuringProcess& mp = out.mp;
  mp.algebra = sys.algebra();
  mp.outcomes = sys.outcomes();
  mp.dim_k = dk;
  Vector psi = Vector::Zero(dk);
  for (Index a = 0; a < l1; ++a) psi(a * l2) = eta1(a);
  mp.sigma = psi * psi.adjoint();
  for (const auto& e0 : lift.e0)
    mp.e.push_back(tensor(Matrix::Identity(l1, l1), e0));
  mp.u = std::move(u);
  out.notes.push_back("probe vector η₁ ⊗ η₂ with η₂ the first basis vector of L₂");
  out.notes.push_back("no padding needed: dim L₁ = dim L₂ = " + std::to_string(l1));
  return out;
}

MpConstruction inner_mp_from_kraus(const CPInstrument& inst, const Tolerance& tol) {
  const auto& alg = inst.algebra();
  const Index n = inst.dim();
  const std::size_t atoms = inst.outcomes().size();
  MpConstruction out;

  std::vector<std::pair<std::size_t, Matrix>> flat;
  double worst_in = 0.0;
  Matrix total = Matrix::Zero(n, n);
  for (std::size_t s = 0; s < atoms; ++s)
    for (const auto& k : inst.kraus(s)) {
      auto in = alg.contains(k, tol.abs);
      worst_in = std::max(worst_in, in.residual);
      if (!in.ok) {
        throw Error(ErrorKind::OutsideAlgebra,
                    "Kraus operator of outcome " + inst.outcomes().label(s) +
                        " is not in the algebra",
                    in.residual);
      }
      flat.emplace_back(s, k);
      total += k.adjoint() * k;
    }
  out.residuals["kraus.membership"] = worst_in;
  Matrix defect = Matrix::Identity(n, n) - total;
  double lo = eigh(defect).values.minCoeff();
  if (lo < -tol.psd_slack) {
    throw Error(ErrorKind::NotPsd, "Σ K*K exceeds the identity", lo);
  }
  Matrix l = sqrt_psd(defect, tol);

  // slots η₀, η₁..η_N, η_{N+1}
  const Index nk = static_cast<Index>(flat.size());
  const Index slots = nk + 2;
  const Index hs = n * slots;
  Matrix v = Matrix::Zero(hs, hs);
  auto place = [&](const Matrix& k, Index slot) {
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) v(i * slots + slot, j * slots) = k(i, j);
  };
  for (Index idx = 0; idx < nk; ++idx) place(flat[idx].second, idx + 1);
  place(l, nk + 1);
  Matrix vv = v.adjoint() * v;
  Matrix expected = tensor(Matrix::Identity(n, n), matrix_unit(slots, 0, 0));
  out.residuals["v.partial_isometry"] = op_norm(vv - expected);
  require(out.residuals["v.partial_isometry"], tol.abs, "partial isometry");

  MeasuringProcess& mp = out.mp;
  mp.algebra = alg;
  mp.outcomes = inst.outcomes();
  mp.dim_k = slots * 2;
  mp.u = halmos_unitary(v);
  mp.sigma = Matrix::Zero(mp.dim_k, mp.dim_k);
  mp.sigma(0, 0) = 1.0;  // η₀ ⊗ g₁
  std::vector<Matrix> slot_proj(atoms, Matrix::Zero(slots, slots));
  slot_proj[0](0, 0) = 1.0;
  for (Index idx = 0; idx < nk; ++idx) slot_proj[flat[idx].first](idx + 1, idx + 1) = 1.0;
  slot_proj[atoms - 1](nk + 1, nk + 1) = 1.0;
  for (const auto& p : slot_proj) mp.e.push_back(tensor(p, Matrix::Identity(2, 2)));

  out.residuals["u.unitary"] = is_unitary(mp.u).residual;
  auto inner = alg.tensor_with_full(mp.dim_k).contains(mp.u, tol.abs);
  out.residuals["u.inner"] = inner.residual;
  require(out.residuals["u.unitary"], tol.abs, "unitary");
  out.notes.push_back("defect operator row kept on the last outcome (zero when complete)");
  out.notes.push_back(inner.ok ? "inner: U lies in M ⊗ B(K)" : "U is not inner");
  return out;
}

FaithfulConstruction faithful_mp(const CPInstrument& inst, Index meter_dim,
                                 const Tolerance& tol) {
  if (meter_dim < 1) throw Error(ErrorKind::InvalidArgument, "meter_dim must be >= 1");
  inst.validate(tol);
  const auto& alg = inst.algebra();
  const Index n = inst.dim();
  const std::size_t atoms = inst.outcomes().size();
  FaithfulConstruction res;
  MpConstruction& out = res.construction;

  // minimal Kraus of X ↦ 𝓘(𝓔(X), s) on B(H)
  std::vector<KrausFamily> kraus;
  Index l1 = 0;
  for (std::size_t s = 0; s < atoms; ++s) {
    Matrix c = heisenberg_choi(
        [&](const Matrix& x) {
          return inst.apply_dual_atom(alg.conditional_expectation(x), s);
        },
        n);
    kraus.push_back(kraus_from_choi(c, n, tol));
    l1 += static_cast<Index>(kraus.back().size());
    double p = op_norm(inst.apply_dual_atom(Matrix::Identity(n, n), s));
    res.null_atoms.push_back(p <= tol.abs);
  }

  // V ξ = Σ A_{s,a} ξ ⊗ e_{s,a} : H → H ⊗ L₁
  Matrix v = Matrix::Zero(n * l1, n);
  std::vector<std::pair<Index, Index>> ranges;
  Index pos = 0;
  for (std::size_t s = 0; s < atoms; ++s) {
    ranges.emplace_back(pos, static_cast<Index>(kraus[s].size()));
    for (const auto& a : kraus[s]) {
      for (Index i = 0; i < n; ++i) v.row(i * l1 + pos) = a.row(i);
      ++pos;
    }
  }
  out.residuals["v.isometry"] = is_isometry(v).residual;
  require(out.residuals["v.isometry"], tol.abs, "isometry");

  // T(x ⊗ ξ ⊗ ψ) = ⟨η₁|ξ⟩ V x ⊗ ψ on H ⊗ L₁ ⊗ L₂, η₁ = e_0
  const Index l2 = meter_dim;
  const Index dk = l1 * l2;
  Matrix t = Matrix::Zero(n * dk, n * dk);
  for (Index x = 0; x < n; ++x)
    for (Index p = 0; p < l2; ++p) {
      Index col = (x * l1 + 0) * l2 + p;
      for (Index r = 0; r < n * l1; ++r) t(r * l2 + p, col) = v(r, x);
    }

  MeasuringProcess& mp = out.mp;
  mp.algebra = alg;
  mp.outcomes = inst.outcomes();
  mp.dim_k = dk * 2;
  mp.u = halmos_unitary(t);
  mp.sigma = Matrix::Zero(mp.dim_k, mp.dim_k);
  mp.sigma(0, 0) = 1.0;  // η₁ ⊗ η₂ ⊗ g₁
  for (std::size_t s = 0; s < atoms; ++s) {
    Matrix e1 = Matrix::Zero(l1, l1);
    auto [start, len] = ranges[s];
    for (Index a = start; a < start + len; ++a) e1(a, a) = 1.0;
    mp.e.push_back(tensor(tensor(e1, Matrix::Identity(l2, l2)), Matrix::Identity(2, 2)));
    res.pointer_ranks.push_back(len);
  }
  out.residuals["u.unitary"] = is_unitary(mp.u).residual;
  require(out.residuals["u.unitary"], tol.abs, "unitary");

  res.faithful = true;
  for (std::size_t s = 0; s < atoms; ++s)
    if (!res.null_atoms[s] && res.pointer_ranks[s] == 0) res.faithful = false;
  out.notes.push_back(
      "finite-dimensional substitution: the dilation block is C^" +
      std::to_string(meter_dim) + " matrices with a Halmos completion");
  out.notes.push_back("faithfulness judged on non-null atoms");
  for (std::size_t s = 0; s < atoms; ++s)
    if (res.null_atoms[s])
      out.notes.push_back("null atom: " + inst.outcomes().label(s));
  return res;
}

}  // namespace qdil
