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

#include "qdil/measuring_process.hpp"

#include <algorithm>
#include <cmath>

#include "qdil/error.hpp"

namespace qdil {

Matrix MeasuringProcess::pointer(const Event& event) const {
  outcomes.check(event);
  Matrix out = Matrix::Zero(dim_k, dim_k);
  for (auto s : event.members()) out += e.at(s);
  return out;
}

void MeasuringProcess::validate(const Tolerance& tol) const {
  Index n = dim();
  if (sigma.rows() != dim_k || sigma.cols() != dim_k) {
    throw Error(ErrorKind::Dimension, "probe state has wrong shape");
  }
  if (e.size() != outcomes.size()) {
    throw Error(ErrorKind::Dimension, "one pointer projection per outcome expected");
  }
  for (const auto& p : e)
    if (p.rows() != dim_k || p.cols() != dim_k)
      throw Error(ErrorKind::Dimension, "pointer projection has wrong shape");
  if (u.rows() != n * dim_k || u.cols() != n * dim_k) {
    throw Error(ErrorKind::Dimension, "U must act on H ⊗ K");
  }
  require_state(sigma, tol);
  auto pvm = is_pvm(e, tol.abs);
  if (!pvm.ok) {
    throw Error(ErrorKind::NotRepresentation, "pointer observable is not a PVM",
                std::max({pvm.completeness, pvm.idempotence, pvm.orthogonality,
                          pvm.hermiticity}));
  }
  auto un = is_unitary(u, tol.abs);
  if (!un.ok) throw Error(ErrorKind::NotRepresentation, "U is not unitary", un.residual);
  induced_instrument_mp(*this, tol);
}

namespace {

/** Σ_m √p_m (1 ⊗ ψ_m) stacked side by side: (n·dk) × (r·n). */
Matrix probe_embedding(const Matrix& sigma, Index n, const Tolerance& tol) {
  auto eig = eigh(sigma);
  std::vector<Index> keep;
  for (Index j = eig.values.size(); j-- > 0;)
    if (eig.values(j) > tol.abs) keep.push_back(j);
  Index dk = sigma.rows();
  Index r = static_cast<Index>(keep.size());
  Matrix phi = Matrix::Zero(n * dk, r * n);
  for (Index m = 0; m < r; ++m) {
    Vector psi = normalize_phase(eig.vectors.col(keep[m])) *
                 std::sqrt(eig.values(keep[m]));
    for (Index i = 0; i < n; ++i) phi.block(i * dk, m * n + i, dk, 1) = psi;
  }
  return phi;
}

class ProcessModel : public OperatorModel {
 public:
  ProcessModel(const MeasuringProcess& mp, const Tolerance& tol)
      : mp_(mp), phi_(probe_embedding(mp.sigma, mp.dim(), tol)) {}

  Index dim() const override { return mp_.dim(); }
  const FiniteVonNeumannAlgebra& algebra() const override { return mp_.algebra; }
  const OutcomeSpace& outcomes() const override { return mp_.outcomes; }
  Index space_dim() const override { return mp_.dim() * mp_.dim_k; }
  Index mixture_rank() const override { return phi_.cols() / mp_.dim(); }
  const Matrix& embedding() const override { return phi_; }

  Matrix act(const Letter& t, const Matrix& m, const Matrix& x) const override {
    if (t.is_in()) return apply_left_factor(m, x, mp_.dim_k);
    return mp_.u.adjoint() * apply_product(m, mp_.pointer(*t.event), mp_.u * x);
  }
  Matrix act_adjoint(const Letter& t, const Matrix& m,
                     const Matrix& x) const override {
    return act(t, m.adjoint(), x);
  }

 private:
  MeasuringProcess mp_;
  Matrix phi_;
};

}  // namespace

std::shared_ptr<const OperatorModel> MeasuringProcess::model(
    const Tolerance& tol) const {
  return std::make_shared<ProcessModel>(*this, tol);
}

Matrix correlations_of_mp(const MeasuringProcess& mp, const TimeWord& t,
                          const OperatorTuple& ms, const Tolerance& tol) {
  return mp.model(tol)->eval(t, ms);
}

CPInstrument induced_instrument_mp(const MeasuringProcess& mp, const Tolerance& tol) {
  Index n = mp.dim();
  Index dk = mp.dim_k;
  Matrix phi = probe_embedding(mp.sigma, n, tol);
  Index r = phi.cols() / n;
  Matrix uphi = mp.u * phi;
  std::vector<KrausFamily> kraus;
  for (std::size_t s = 0; s < mp.outcomes.size(); ++s) {
    Matrix f = orthonormal_range(mp.e.at(s), tol);
    KrausFamily raw;
    for (Index m = 0; m < r; ++m) {
      Matrix block = uphi.middleCols(m * n, n);
      for (Index c = 0; c < f.cols(); ++c) {
        // (1 ⊗ f_c*) U (1 ⊗ √p_m ψ_m)
        Matrix a = Matrix::Zero(n, n);
        for (Index i = 0; i < n; ++i)
          a.row(i) = f.col(c).adjoint() * block.middleRows(i * dk, dk);
        raw.push_back(std::move(a));
      }
    }
    Matrix choi = heisenberg_choi(
        [&](const Matrix& x) { return apply_kraus(raw, x); }, n);
    kraus.push_back(kraus_from_choi(choi, n, tol));
  }
  CPInstrument inst(mp.algebra, mp.outcomes, std::move(kraus));
  double closure = inst.closure_residual();
  if (closure > tol.abs) {
    throw Error(ErrorKind::OutsideAlgebra,
                "measuring process does not preserve the algebra", closure);
  }
  return inst;
}

bool EquivalenceReport::equivalent() const {
  return std::all_of(orders.begin(), orders.end(),
                     [](const OrderResult& r) { return r.equivalent; });
}

std::size_t EquivalenceReport::first_difference() const {
  for (const auto& r : orders)
    if (!r.equivalent) return r.order;
  return 0;
}

namespace {

struct Slot {
  Letter letter;
  Matrix op;
};

/** Every (letter, matrix unit) pair; letters are `in` then atoms. */
std::vector<Slot> all_slots(const CorrelationModel& model) {
  std::vector<Slot> out;
  std::size_t atoms = model.outcomes().size();
  for (std::size_t l = 0; l <= atoms; ++l) {
    Letter t = l == 0 ? Letter::in() : Letter::atom(atoms, l - 1);
    for (const auto& b : model.algebra().basis()) out.push_back({t, b});
  }
  return out;
}

/** All words of exactly `len` slots, as index sequences. */
std::vector<std::vector<std::size_t>> all_words(std::size_t n_slots, std::size_t len) {
  std::vector<std::vector<std::size_t>> out{{}};
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& w : out)
      for (std::size_t s = 0; s < n_slots; ++s) {
        auto x = w;
        x.push_back(s);
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

/**
 * All correlation values of one order, laid out as a single matrix so two
 * models can be compared entrywise. For operator models the word is split
 * as left half × (middle letter) × right half and evaluated by products.
 */
std::vector<Matrix> order_values(const CorrelationModel& model, std::size_t order,
                                 const std::vector<Slot>& slots) {
  std::vector<Matrix> values;
  const auto* op = dynamic_cast<const OperatorModel*>(&model);
  if (op == nullptr) {
    for (const auto& w : all_words(slots.size(), order)) {
      TimeWord t;
      OperatorTuple ms;
      for (auto s : w) {
        t.push_back(slots[s].letter);
        ms.push_back(slots[s].op);
      }
      values.push_back(model.eval(t, ms));
    }
    return values;
  }
  std::size_t half = order / 2;
  auto words = all_words(slots.size(), half);
  Index d = op->space_dim();
  Index n = op->dim();
  Index r = op->mixture_rank();
  Index count = static_cast<Index>(words.size());
  Matrix left(r * d, count * n), right(r * d, count * n);
  for (Index i = 0; i < count; ++i) {
    TimeWord t;
    OperatorTuple ms;
    for (auto s : words[i]) {
      t.push_back(slots[s].letter);
      ms.push_back(slots[s].op);
    }
    Matrix x = op->apply_word_adjoint(t, ms, op->embedding());
    Matrix y = op->apply_word(t, ms, op->embedding());
    for (Index m = 0; m < r; ++m) {
      left.block(m * d, i * n, d, n) = x.middleCols(m * n, n);
      right.block(m * d, i * n, d, n) = y.middleCols(m * n, n);
    }
  }
  if (order % 2 == 0) {
    values.push_back(left.adjoint() * right);
    return values;
  }
  for (const auto& s : slots) {
    Matrix mid(r * d, count * n);
    for (Index m = 0; m < r; ++m)
      mid.middleRows(m * d, d) = op->act(s.letter, s.op, right.middleRows(m * d, d));
    values.push_back(left.adjoint() * mid);
  }
  return values;
}

}  // namespace

EquivalenceReport n_equivalent(const CorrelationModel& a, const CorrelationModel& b,
                               std::size_t max_order, const Tolerance& tol) {
  if (a.dim() != b.dim() || !(a.outcomes() == b.outcomes()) ||
      !a.algebra().same_algebra(b.algebra(), tol.abs)) {
    throw Error(ErrorKind::Dimension,
                "equivalence needs processes for the same system and outcomes");
  }
  if (max_order < 1) throw Error(ErrorKind::InvalidArgument, "order must be >= 1");
  auto slots = all_slots(a);
  EquivalenceReport rep;
  for (std::size_t k = 1; k <= max_order; ++k) {
    auto va = order_values(a, k, slots);
    auto vb = order_values(b, k, slots);
    if (va.size() != vb.size()) {
      // one side fell back to direct evaluation; compare word by word
      va.clear();
      vb.clear();
      for (const auto& w : all_words(slots.size(), k)) {
        TimeWord t;
        OperatorTuple ms;
        for (auto s : w) {
          t.push_back(slots[s].letter);
          ms.push_back(slots[s].op);
        }
        va.push_back(a.eval(t, ms));
        vb.push_back(b.eval(t, ms));
      }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i)
      worst = std::max(worst, max_abs(va[i] - vb[i]));
    std::string label =
        k == 2 ? "statistical equivalence" : "order " + std::to_string(k);
    rep.orders.push_back({k, worst, worst <= tol.abs, label});
  }
  return rep;
}

}  // namespace qdil
