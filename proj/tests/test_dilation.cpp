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

#include <doctest.h>

#include "oracles.hpp"
#include "qdil/dilation.hpp"
#include "qdil/error.hpp"
#include "qdil/random.hpp"
#include "qdil/representation.hpp"
#include "qdil/vn_model.hpp"
#include "test_support.hpp"

using namespace qdil;

namespace {

Matrix diag(std::initializer_list<double> d) {
  Vector v(static_cast<Index>(d.size()));
  Index i = 0;
  for (double x : d) v(i++) = x;
  return v.asDiagonal();
}

WordSample random_word(Random& rng, std::size_t len, std::size_t atoms, Index n) {
  WordSample w;
  for (std::size_t i = 0; i < len; ++i) {
    auto l = static_cast<std::size_t>(rng.engine()() % (atoms + 1));
    w.word.push_back(l == 0 ? Letter::in() : Letter::atom(atoms, l - 1));
    w.ops.push_back(rng.ginibre(n, n));
  }
  return w;
}

}  // namespace

TEST_SUITE("dilation") {
  TEST_CASE("minimal Stinespring") {
    auto id = minimal_stinespring({Matrix::Identity(2, 2)}, 2);
    CHECK(id.dim_k == 2);
    CHECK(is_unitary(id.v).ok);
    // completely depolarising map in Heisenberg form, M ↦ tr(M)/2 · 1
    KrausFamily dep;
    for (Index i = 0; i < 2; ++i)
      for (Index j = 0; j < 2; ++j) dep.push_back(oracle::unit(2, i, j) / std::sqrt(2.0));
    Matrix c = oracle::choi(dep, 2);
    CHECK(oracle::rank(c) == 4);
    auto st = minimal_stinespring_from_choi(c, 2);
    CHECK(st.dim_k == 8);
    Random rng(3);
    Matrix m = rng.ginibre(2, 2);
    CHECK(max_abs(st.v.adjoint() * st.pi(m) * st.v - m.trace() / 2.0 * Matrix::Identity(2, 2)) <
          1e-12);
    Matrix u = rng.unitary(2);
    CHECK(minimal_stinespring({u}, 2).dim_k == 2);
  }

  TEST_CASE("instrument representation") {
    auto z = fixture("luders-z").instrument;
    auto rep = instrument_representation(z);
    Index expect = 0;
    for (const auto& c : z.choi()) expect += 2 * oracle::rank(c);
    CHECK(rep.dim_k == expect);
    CHECK(rep.dim_k == 4);
    Random rng(4);
    Matrix m = rng.ginibre(2, 2);
    for (std::size_t s = 0; s < 2; ++s) {
      CHECK(max_abs(rep.reconstruct(m, s) - z.apply_dual_atom(m, s)) < 1e-10);
      for (const auto& im : rep.pi0.images)
        CHECK(max_abs(im * rep.e0[s] - rep.e0[s] * im) < 1e-12);
    }
    auto h = fixture("unitary-hadamard").instrument;
    CHECK(instrument_representation(h).dim_k == 2);
  }

  TEST_CASE("multiplicity split") {
    auto full = FiniteVonNeumannAlgebra::full(2);
    auto ident = Representation::from_function(full, 2, [](const Matrix& x) { return x; });
    auto s1 = multiplicity_split(ident);
    CHECK(s1.dim_k == 1);
    CHECK(max_abs(s1.u1 - Matrix::Identity(2, 2)) < 1e-12);
    auto twice = Representation::from_function(full, 4, [](const Matrix& x) {
      Matrix y = Matrix::Zero(4, 4);
      y.topLeftCorner(2, 2) = x;
      y.bottomRightCorner(2, 2) = x;
      return y;
    });
    CHECK(multiplicity_split(twice).dim_k == 2);
    Matrix w = oracle::fixed_unitary(6, 9);
    auto planted = Representation::from_function(full, 6, [&](const Matrix& x) {
      return Matrix(w * oracle::kron(x, Matrix::Identity(3, 3)) * w.adjoint());
    });
    auto s3 = multiplicity_split(planted);
    CHECK(s3.dim_k == 3);
    CHECK(s3.residual <= 1e-10);
    auto junk = Representation::from_function(full, 4, [](const Matrix& x) {
      return Matrix(oracle::kron(x, diag({1, 0.5})));
    });
    CHECK_THROWS_AS(multiplicity_split(junk), Error);
  }

  TEST_CASE("commutant PVM lift and intertwiner vectors") {
    Matrix u2 = oracle::fixed_unitary(6, 2);
    Matrix p = diag({1, 0, 1});
    Matrix q = Matrix::Identity(3, 3) - p;
    auto lift = commutant_pvm_lift({u2.adjoint() * oracle::kron(Matrix::Identity(2, 2), p) * u2,
                                    u2.adjoint() * oracle::kron(Matrix::Identity(2, 2), q) * u2},
                                   u2, 2);
    CHECK(max_abs(lift.e0[0] - p) < 1e-12);
    auto whole = commutant_pvm_lift({Matrix::Identity(6, 6)}, u2, 2);
    CHECK(max_abs(whole.e0[0] - Matrix::Identity(3, 3)) < 1e-12);
    CHECK_THROWS_AS(commutant_pvm_lift({oracle::kron(diag({1, 0}), Matrix::Identity(3, 3))},
                                       Matrix::Identity(6, 6), 2),
                    Error);

    Vector eta(3);
    eta << 0.6, Complex(0, 0.8), 0.0;
    Matrix v = oracle::kron(Matrix::Identity(2, 2), eta);
    auto iv = intertwiner_vector(v, 2);
    CHECK((iv.eta - eta).norm() < 1e-14);
    Matrix w = oracle::fixed_unitary(3, 5);
    Matrix twisted = oracle::kron(diag({1, -1}), w) * v;
    CHECK_THROWS_AS(intertwiner_vector(twisted, 2), Error);
    auto one = intertwiner_vector(Matrix::Identity(2, 2), 2);
    CHECK(std::abs(std::abs(one.eta(0)) - 1.0) < 1e-14);
  }

  TEST_CASE("measuring process from correlations") {
    auto z = fixture("luders-z").instrument;
    auto sys = from_instrument(z);
    auto built = mp_from_correlations(sys);
    CHECK_NOTHROW(built.mp.validate());
    CHECK(instrument_distance(induced_instrument_mp(built.mp), z) < 1e-10);
    CHECK(instrument_distance(induced_instrument_mp(built.mp), induced_instrument(sys)) < 1e-10);
    auto model = built.mp.model();
    Random rng(6);
    for (std::size_t len = 1; len <= 3; ++len)
      for (int trial = 0; trial < 6; ++trial) {
        auto w = random_word(rng, len, 2, 2);
        Matrix lhs = model->eval(w.word, w.ops);
        CHECK(max_abs(lhs - sys.eval_W(w.word, w.ops)) < 1e-9);
        CHECK(max_abs(lhs - testing_support::brute_force_W(built.mp, w.word, w.ops)) < 1e-10);
      }
    auto id = fixture("identity").instrument;
    auto idmp = mp_from_correlations(from_instrument(id)).mp;
    Matrix m = rng.ginibre(2, 2);
    CHECK(max_abs(induced_instrument_mp(idmp).apply_dual_atom(m, 0) - m) < 1e-10);

    auto restricted = from_instrument(fixture("restricted/luders-z").instrument);
    CHECK_THROWS_AS(mp_from_correlations(restricted), Error);
  }

  TEST_CASE("induced instruments of simple processes") {
    MeasuringProcess mp;
    mp.algebra = FiniteVonNeumannAlgebra::full(2);
    mp.outcomes = OutcomeSpace::numbered(2);
    mp.dim_k = 2;
    mp.sigma = diag({0.25, 0.75});
    mp.e = {diag({1, 0}), diag({0, 1})};
    mp.u = Matrix::Identity(4, 4);
    auto inst = induced_instrument_mp(mp);
    Matrix m = Random(2).ginibre(2, 2);
    CHECK(max_abs(inst.apply_dual_atom(m, 0) - 0.25 * m) < 1e-12);
    CHECK(max_abs(inst.apply_dual(Matrix::Identity(2, 2), inst.outcomes().whole()) -
                  Matrix::Identity(2, 2)) < 1e-12);
    auto model = mp.model();
    CHECK(max_abs(model->eval({Letter::in()}, {m}) - m) < 1e-12);
    CHECK(max_abs(model->eval({Letter::atom(2, 1)}, {m}) - inst.apply_dual_atom(m, 1)) < 1e-12);
    CHECK(max_abs(correlations_of_mp(mp, {Letter::in()}, {m}) - m) < 1e-12);
    CHECK_THROWS_AS(correlations_of_mp(mp, {Letter::in(), Letter::in()}, {m}), Error);
    mp.sigma = diag({0.5, 0.6});
    CHECK_THROWS_AS(mp.validate(), Error);
  }

  TEST_CASE("process correlations obey adjoint symmetry") {
    auto mp = mp_from_correlations(from_instrument(fixture("trine").instrument)).mp;
    auto model = mp.model();
    Random rng(8);
    for (int trial = 0; trial < 20; ++trial) {
      auto w = random_word(rng, 1 + trial % 4, 3, 2);
      Matrix lhs = model->eval(w.word, w.ops).adjoint();
      Matrix rhs = model->eval(reversed(w.word), adjoint_reversed(w.ops));
      CHECK(max_abs(lhs - rhs) < 1e-12);
    }
  }

  TEST_CASE("n-equivalence") {
    auto inst = Random(9).instrument(2, 2, 2);
    auto sys = from_instrument(inst);
    auto a = mp_from_correlations(sys).mp;
    auto b = mp_from_correlations(sys, {std::uint64_t{77}}).mp;
    CHECK(max_abs(a.u - b.u) > 1e-3);
    auto self = n_equivalent(*a.model(), *a.model(), 3);
    CHECK(self.equivalent());
    CHECK(self.orders[1].label == "statistical equivalence");
    auto ab = n_equivalent(*a.model(), *b.model(), 3);
    CHECK(ab.orders[1].equivalent);
    CHECK(ab.equivalent());

    // a different anchor gives an equivalent system
    auto anchored = mp_from_correlations(from_instrument(inst, std::string("1"))).mp;
    CHECK(n_equivalent(*a.model(), *anchored.model(), 3).equivalent());

    // changing U away from H ⊗ supp σ keeps the instrument but not order 3
    auto c = testing_support::twist_off_support(a, 4);
    CHECK_NOTHROW(c.validate());
    auto ac = n_equivalent(*a.model(), *c.model(), 3);
    CHECK(ac.orders[1].equivalent);
    CHECK_FALSE(ac.orders[2].equivalent);
    CHECK(ac.first_difference() == 3);

    auto other = mp_from_correlations(from_instrument(Random(10).instrument(2, 2, 2))).mp;
    auto diff = n_equivalent(*a.model(), *other.model(), 2);
    CHECK_FALSE(diff.orders[1].equivalent);
    CHECK(instrument_distance(induced_instrument_mp(a), induced_instrument_mp(other)) > 1e-3);
    CHECK_FALSE(diff.orders[0].equivalent);

    auto three = mp_from_correlations(from_instrument(Random(10).instrument(2, 3, 1))).mp;
    CHECK_THROWS_AS(n_equivalent(*a.model(), *three.model(), 2), Error);
  }

  TEST_CASE("inner measuring processes") {
    auto z = fixture("luders-z").instrument;
    auto built = inner_mp_from_kraus(z);
    CHECK(built.mp.dim_k == 8);
    CHECK(built.residuals.at("u.unitary") <= 1e-12);
    CHECK(built.residuals.at("u.inner") <= 1e-10);
    CHECK(instrument_distance(induced_instrument_mp(built.mp), z) < 1e-10);

    auto dz = fixture("restricted/luders-z").instrument;
    auto inner = inner_mp_from_kraus(dz);
    CHECK(inner.residuals.at("u.inner") <= 1e-10);
    // oracle: U commutes with the commutant of 𝓜 ⊗ B(K), here the diagonal projections ⊗ 1
    for (Index i = 0; i < 2; ++i) {
      Index k = inner.mp.dim_k;
      Matrix p = oracle::kron(oracle::unit(2, i, i), Matrix::Identity(k, k));
      CHECK(oracle::max_entry(p * inner.mp.u - inner.mp.u * p) < 1e-12);
    }
    CHECK(instrument_distance(induced_instrument_mp(inner.mp), dz) < 1e-10);

    Matrix h = fixture("unitary-hadamard").instrument.kraus(0)[0];
    CPInstrument leak(FiniteVonNeumannAlgebra::diagonal(2), OutcomeSpace({"1"}), {{h}});
    CHECK_THROWS_AS(inner_mp_from_kraus(leak), Error);
  }

  TEST_CASE("halmos block is unitary for partial isometries") {
    Matrix v = Matrix::Zero(3, 3);
    v(1, 0) = 1.0;
    v(2, 2) = Complex(0, 1);
    CHECK(is_unitary(halmos_unitary(v)).residual <= 1e-15);
  }

  TEST_CASE("faithful measuring processes") {
    auto z = fixture("luders-z").instrument;
    auto res = faithful_mp(z);
    CHECK(res.faithful);
    CHECK(instrument_distance(induced_instrument_mp(res.construction.mp), z) < 1e-10);
    bool noted = false;
    for (const auto& n : res.construction.notes)
      noted = noted || n.find("finite-dimensional substitution") != std::string::npos;
    CHECK(noted);

    // an instrument with a null outcome
    Matrix p0 = diag({1, 0}), p1 = diag({0, 1});
    CPInstrument with_null(2, OutcomeSpace({"a", "b", "never"}), {{p0}, {p1}, {}});
    auto rn = faithful_mp(with_null);
    CHECK(rn.null_atoms[2]);
    CHECK(rn.pointer_ranks[2] == 0);
    CHECK(rn.faithful);

    for (const auto& f : restricted_fixtures()) {
      auto r = faithful_mp(f.instrument);
      auto induced = induced_instrument_mp(r.construction.mp);
      CHECK_MESSAGE(instrument_distance(induced, f.instrument) < 1e-9, f.name);
    }
  }
}
