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

// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qdil/correlations.hpp"
#include "qdil/dilation.hpp"
#include "qdil/error.hpp"
#include "qdil/kolmogorov.hpp"
#include "qdil/measuring_process.hpp"
#include "qdil/random.hpp"
#include "qdil/representation.hpp"
#include "qdil/vn_model.hpp"
#include "test_support.hpp"

using namespace qdil;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::size_t pick(Random& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.engine()() % (hi - lo + 1));
}

Index expected_dim_l(const CPInstrument& inst) {
  Index total = inst.dim();
  for (std::size_t s = 0; s < inst.outcomes().size(); ++s)
    total += oracle::cyclic_rank(inst.kraus(s), inst.algebra().basis(), inst.dim());
  return total;
}

// 1. instrument → correlations → measuring process → instrument
Verdict round_trip() {
  double worst = 0.0, slowest = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    Random rng(1000 + i);
    auto dim = static_cast<Index>(pick(rng, 2, 4));
    std::size_t atoms = pick(rng, 2, 4);
    std::size_t kraus = pick(rng, 1, 3);
    auto inst = rng.instrument(dim, atoms, kraus);
    auto t0 = std::chrono::steady_clock::now();
    auto mp = mp_from_correlations(from_instrument(inst)).mp;
    double r = instrument_distance(induced_instrument_mp(mp), inst);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    worst = std::max(worst, r);
    slowest = std::max(slowest, secs);
  }
  return {worst <= 1e-8 && slowest < 5.0,
          "100 instruments, worst residual " + fmt("%.2e", worst) + ", slowest " +
              fmt("%.2f", slowest) + " s"};
}

// 2. reported dimensions equal independently recomputed ranks
Verdict minimality() {
  std::vector<CPInstrument> corpus;
  for (const auto& f : fixtures()) corpus.push_back(f.instrument);
  for (std::uint64_t i = 0; i < 50; ++i) {
    Random rng(2000 + i);
    auto dim = static_cast<Index>(pick(rng, 2, 3));
    std::size_t atoms = pick(rng, 1, 3);
    std::size_t kraus = pick(rng, 1, 3);
    corpus.push_back(rng.instrument(dim, atoms, kraus));
  }
  std::size_t mismatches = 0;
  for (const auto& inst : corpus) {
    Index n = inst.dim();
    Index rep_expect = 0;
    for (std::size_t s = 0; s < inst.outcomes().size(); ++s) {
      Index r = oracle::rank(oracle::choi(inst.kraus(s), n));
      rep_expect += n * r;
      if (minimal_stinespring(inst.kraus(s), n).dim_k != n * r) ++mismatches;
    }
    if (instrument_representation(inst).dim_k != rep_expect) ++mismatches;
    if (from_instrument(inst).dim_l() != expected_dim_l(inst)) ++mismatches;
  }
  return {mismatches == 0, std::to_string(corpus.size()) + " instruments, " +
                               std::to_string(mismatches) + " dimension mismatches"};
}

// 3. decompositions under permuted index orders are unitarily equivalent
Verdict kolmogorov_uniqueness() {
  double worst = 0.0;
  std::size_t failures = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    Random rng(3000 + i);
    auto dim_h = static_cast<Index>(pick(rng, 1, 3));
    auto planted = static_cast<Index>(pick(rng, 1, 6));
    std::size_t count = pick(rng, 3, 6);
    std::vector<std::string> labels;
    std::vector<Matrix> lambda;
    for (std::size_t c = 0; c < count; ++c) {
      labels.push_back("c" + std::to_string(c));
      lambda.push_back(rng.ginibre(planted, dim_h));
    }
    auto k = OperatorKernel::from_factors(labels, lambda);
    std::vector<std::size_t> perm(count);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    auto d1 = minimal_decomposition(k);
    auto d2 = minimal_decomposition(k.permuted(perm));
    auto eq = unitary_equivalence(d1, d2, k);
    if (!eq.equivalent || d1.dim_l != oracle::rank(k.gram())) ++failures;
    worst = std::max(worst, eq.residual);
  }
  return {failures == 0 && worst <= 1e-9,
          "50 planted kernels, worst residual " + fmt("%.2e", worst) + ", " +
              std::to_string(failures) + " failures"};
}

double worst_residual(const AxiomReport& r) {
  double w = 0.0;
  for (const auto& a : r.results) w = std::max(w, a.residual);
  return w;
}

double worst_failure(const AxiomReport& r) {
  double w = 0.0;
  for (const auto& a : r.results)
    if (!a.passed) w = std::max(w, a.residual);
  return w;
}

// 4. axiom suite on healthy systems, detection of planted violations
Verdict axiom_suite() {
  Tolerance tol;
  tol.abs = 1e-8;
  double healthy = 0.0, weakest_detection = INFINITY;
  std::size_t failures = 0;
  for (std::uint64_t i = 0; i < 6; ++i) {
    Random rng(4000 + i);
    std::size_t atoms = pick(rng, 2, 3);
    std::size_t kraus = pick(rng, 1, 2);
    auto inst = rng.instrument(2, atoms, kraus);
    auto sys = from_instrument(inst);
    auto mp = mp_from_correlations(sys).mp;
    for (const auto& model :
         std::vector<std::shared_ptr<const CorrelationModel>>{sys.model(), mp.model()}) {
      auto rep = verify_axioms(*model, 3, 200, 40 + i, tol);
      if (!rep.all_passed()) ++failures;
      healthy = std::max(healthy, worst_residual(rep));
    }
    auto dropped = testing_support::drop_atom(sys, 0).model();
    auto flipped = std::make_shared<testing_support::SignFlipModel>(sys.model());
    for (const auto& bad :
         std::vector<std::shared_ptr<const CorrelationModel>>{dropped, flipped}) {
      auto rep = verify_axioms(*bad, 3, 200, 50 + i, tol);
      double w = rep.all_passed() ? 0.0 : worst_failure(rep);
      weakest_detection = std::min(weakest_detection, w);
    }
  }
  bool pass = failures == 0 && healthy <= 1e-8 && weakest_detection >= 1e-3;
  return {pass, "12 healthy systems worst residual " + fmt("%.2e", healthy) +
                    ", planted violations detected with residual >= " +
                    fmt("%.2e", weakest_detection)};
}

// 5. order 2 = statistical equivalence; order 3 separates
Verdict equivalence_hierarchy() {
  Tolerance tol;
  std::size_t disagreements = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    Random rng(5000 + i);
    auto atoms = pick(rng, 2, 3);
    auto ia = rng.instrument(2, atoms, pick(rng, 1, 2));
    // every fifth pair shares its instrument
    auto ib = i % 5 == 0 ? ia : rng.instrument(2, atoms, pick(rng, 1, 2));
    auto a = mp_from_correlations(from_instrument(ia)).mp;
    auto b = mp_from_correlations(from_instrument(ib)).mp;
    bool same = instrument_distance(induced_instrument_mp(a), induced_instrument_mp(b)) <= tol.abs;
    bool two_eq = n_equivalent(*a.model(), *b.model(), 2).equivalent();
    if (same != two_eq) ++disagreements;
  }
  std::size_t completions_equal = 0, twisted_two_equal = 0, twisted_split = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    Random rng(5100 + i);
    auto inst = rng.instrument(2, 2, pick(rng, 1, 2));
    auto sys = from_instrument(inst);
    auto a = mp_from_correlations(sys).mp;
    // a different completion of U between the orthocomplements
    auto b = mp_from_correlations(sys, {std::uint64_t{900 + i}}).mp;
    auto ab = n_equivalent(*a.model(), *b.model(), 3);
    if (ab.orders[1].equivalent && ab.equivalent()) ++completions_equal;
    if (!ab.orders[1].equivalent) ++disagreements;
    // U changed only away from H ⊗ supp σ
    auto c = testing_support::twist_off_support(a, static_cast<unsigned>(700 + i));
    auto ac = n_equivalent(*a.model(), *c.model(), 3);
    bool same = instrument_distance(induced_instrument_mp(a), induced_instrument_mp(c)) <= tol.abs;
    if (same != ac.orders[1].equivalent) ++disagreements;
    if (ac.orders[1].equivalent) ++twisted_two_equal;
    if (ac.orders[1].equivalent && !ac.orders[2].equivalent) ++twisted_split;
  }
  bool pass = disagreements == 0 && twisted_split > 0;
  return {pass, "50 random pairs + 40 planted pairs, " + std::to_string(disagreements) +
                    " disagreements; completion variants fully equivalent " +
                    std::to_string(completions_equal) + "/20; twisted variants 2-equivalent " +
                    std::to_string(twisted_two_equal) + "/20, order-3 distinct " +
                    std::to_string(twisted_split) + "/20"};
}

// 6. inner measuring processes
Verdict inner_dilation() {
  double unitarity = 0.0, inner = 0.0, rt = 0.0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    Random rng(6000 + i);
    auto dim = static_cast<Index>(pick(rng, 2, 3));
    auto alg = i % 2 == 0 ? FiniteVonNeumannAlgebra::full(dim)
                          : FiniteVonNeumannAlgebra::diagonal(dim);
    std::size_t atoms = pick(rng, 2, 3);
    std::size_t kraus = pick(rng, 1, 2);
    auto inst = rng.inner_instrument(alg, atoms, kraus);
    auto built = inner_mp_from_kraus(inst);
    unitarity = std::max(unitarity, is_unitary(built.mp.u).residual);
    inner = std::max(inner, built.residuals.at("u.inner"));
    rt = std::max(rt, instrument_distance(induced_instrument_mp(built.mp), inst));
  }
  return {unitarity <= 1e-12 && inner <= 1e-9 && rt <= 1e-9,
          "50 instruments, unitarity " + fmt("%.2e", unitarity) + ", inner " +
              fmt("%.2e", inner) + ", round trip " + fmt("%.2e", rt)};
}

// 7. faithful pointers on non-full algebras
Verdict faithful_dilation() {
  double effects = 0.0, maps = 0.0;
  bool faithful = true;
  for (const auto& f : restricted_fixtures()) {
    auto res = faithful_mp(f.instrument);
    const auto& mp = res.construction.mp;
    faithful = faithful && res.faithful;
    std::size_t atoms = f.instrument.outcomes().size();
    Index n = f.instrument.dim();
    Matrix one = Matrix::Identity(n, n);
    for (std::size_t mask = 1; mask < (std::size_t{1} << atoms); ++mask) {
      std::vector<std::size_t> idx;
      for (std::size_t s = 0; s < atoms; ++s)
        if (mask >> s & 1) idx.push_back(s);
      Event ev = Event::from_indices(atoms, idx);
      Matrix direct = correlations_of_mp(mp, {Letter::of(ev)}, {one});
      effects = std::max(effects, max_abs(direct - f.instrument.apply_dual(one, ev)));
    }
    maps = std::max(maps, instrument_distance(induced_instrument_mp(mp), f.instrument));
  }
  return {faithful && effects <= 1e-12 && maps <= 1e-9,
          std::to_string(restricted_fixtures().size()) + " fixtures, effects " +
              fmt("%.2e", effects) + ", maps " + fmt("%.2e", maps)};
}

// 8. coarse graining agrees on the generated σ-field
Verdict coarse_graining() {
  double worst = 0.0;
  std::size_t fields = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    Random rng(8000 + i);
    auto inst = rng.instrument(2, 6, pick(rng, 1, 2));
    std::vector<Event> gens;
    std::size_t n_gens = pick(rng, 1, 3);
    for (std::size_t g = 0; g < n_gens; ++g) {
      std::vector<std::size_t> idx;
      for (std::size_t s = 0; s < 6; ++s)
        if (rng.engine()() % 2) idx.push_back(s);
      gens.push_back(Event::from_indices(6, idx));
    }
    auto cg = inst.coarse_grain(gens);
    // cells from membership signatures, independently of the library
    std::map<std::vector<bool>, std::vector<std::size_t>> cells;
    for (std::size_t s = 0; s < 6; ++s) {
      std::vector<bool> sig;
      for (const auto& g : gens) sig.push_back(g.contains(s));
      cells[sig].push_back(s);
    }
    std::vector<std::vector<std::size_t>> cell_list;
    for (auto& [sig, members] : cells) cell_list.push_back(members);
    Matrix rho = rng.state(2);
    Matrix m = rng.ginibre(2, 2);
    for (std::size_t mask = 0; mask < (std::size_t{1} << cell_list.size()); ++mask) {
      std::vector<std::size_t> idx;
      for (std::size_t c = 0; c < cell_list.size(); ++c)
        if (mask >> c & 1) idx.insert(idx.end(), cell_list[c].begin(), cell_list[c].end());
      Event ev = Event::from_indices(6, idx);
      Complex a = (rho * inst.apply_dual(m, ev)).trace();
      Complex b = (rho * cg.instrument.apply_dual(m, ev)).trace();
      worst = std::max(worst, std::abs(a - b));
    }
    ++fields;
  }
  return {worst <= 1e-12,
          std::to_string(fields) + " six-atom instruments, worst " + fmt("%.2e", worst)};
}

// 9. discrete von Neumann model
Verdict von_neumann() {
  // integer spectrum {−1, 3, 9} in a rotated basis; −1 ≡ 7 and 9 ≡ 1 mod 8
  Matrix w = oracle::fixed_unitary(3, 21);
  Vector d(3);
  d << -1.0, 3.0, 9.0;
  Matrix a = w * d.asDiagonal() * w.adjoint();
  Vector alpha = Vector::Zero(8);
  alpha(0) = 1.0;
  auto mp = DiscreteVNModel{a, 8, alpha, 2.0 * std::numbers::pi / 8.0}.build();
  auto induced = induced_instrument_mp(mp);
  auto luders = modular_luders(a, 8);
  double dist = instrument_distance(induced, luders);
  Matrix rho = Random(9).state(3);
  const std::size_t shots = 10000;
  auto counts = induced.sample_counts(rho, shots, 99);
  bool within = true;
  for (std::size_t s = 0; s < induced.outcomes().size(); ++s) {
    double p = luders.outcome_probability(rho, luders.outcomes().atom(s));
    within = within && oracle::within_three_sigma(p, counts[s], shots);
  }
  return {dist <= 1e-9 && within, "d = 8, distance to Lüders " + fmt("%.2e", dist) +
                                      (within ? ", 10^4 shots within 3σ" : ", sampling outside 3σ")};
}

// 10. W_T(M⃗)* = W_{T^#}(M⃗^#)
Verdict adjoint_symmetry() {
  Random rng(10);
  auto inst = rng.instrument(2, 3, 2);
  auto sys = from_instrument(inst);
  auto mp = mp_from_correlations(sys).mp;
  auto models = std::vector<std::shared_ptr<const CorrelationModel>>{sys.model(), mp.model()};
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    TimeWord t;
    OperatorTuple ms;
    std::size_t len = pick(rng, 1, 5);
    for (std::size_t k = 0; k < len; ++k) {
      std::size_t l = pick(rng, 0, 3);
      t.push_back(l == 0 ? Letter::in() : Letter::atom(3, l - 1));
      ms.push_back(rng.element(inst.algebra()));
    }
    const auto& model = *models[static_cast<std::size_t>(trial) % 2];
    Matrix lhs = model.eval(t, ms).adjoint();
    Matrix rhs = model.eval(reversed(t), adjoint_reversed(ms));
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  return {worst <= 1e-12, "500 random words, worst " + fmt("%.2e", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"dilation round trip", round_trip},
      {"minimal dimensions", minimality},
      {"kolmogorov uniqueness", kolmogorov_uniqueness},
      {"correlation axioms", axiom_suite},
      {"equivalence hierarchy", equivalence_hierarchy},
      {"inner dilation", inner_dilation},
      {"faithful dilation", faithful_dilation},
      {"coarse graining", coarse_graining},
      {"von neumann model", von_neumann},
      {"adjoint symmetry", adjoint_symmetry},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!v.pass) ++failed;
    std::printf("%s %2d %-22s %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", index, name.c_str(),
                v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
