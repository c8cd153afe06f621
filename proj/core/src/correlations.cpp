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

#include "qdil/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "qdil/error.hpp"
#include "qdil/kolmogorov.hpp"

namespace qdil {

TimeWord reversed(const TimeWord& t) { return TimeWord(t.rbegin(), t.rend()); }

OperatorTuple adjoint_reversed(const OperatorTuple& m) {
  OperatorTuple out;
  for (auto it = m.rbegin(); it != m.rend(); ++it) out.push_back(it->adjoint());
  return out;
}

std::string to_string(const TimeWord& t, const OutcomeSpace& outcomes) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    if (t[i].is_in()) {
      out += "in";
      continue;
    }
    auto mem = t[i].event->members();
    if (mem.size() == 1) {
      out += outcomes.label(mem[0]);
    } else {
      out += "{";
      for (std::size_t k = 0; k < mem.size(); ++k)
        out += (k ? "," : "") + outcomes.label(mem[k]);
      out += "}";
    }
  }
  return out + ")";
}

namespace {

template <typename T>
std::vector<T> join(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void check_word(const TimeWord& t, const OperatorTuple& ms, const OutcomeSpace& o,
                Index dim) {
  if (t.empty()) throw Error(ErrorKind::InvalidArgument, "time words are nonempty");
  if (t.size() != ms.size()) {
    throw Error(ErrorKind::Dimension, "one operator per letter expected");
  }
  for (const auto& l : t)
    if (!l.is_in()) o.check(*l.event);
  for (const auto& m : ms)
    if (m.rows() != dim || m.cols() != dim)
      throw Error(ErrorKind::Dimension, "slot operator has wrong shape");
}

}  // namespace

Matrix CorrelationModel::gram(const std::vector<WordSample>& samples) const {
  Index n = dim();
  Index total = n * static_cast<Index>(samples.size());
  Matrix g(total, total);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    TimeWord left = reversed(samples[i].word);
    OperatorTuple lops = adjoint_reversed(samples[i].ops);
    for (std::size_t j = 0; j < samples.size(); ++j) {
      g.block(static_cast<Index>(i) * n, static_cast<Index>(j) * n, n, n) =
          eval(join(left, samples[j].word), join(lops, samples[j].ops));
    }
  }
  return g;
}

Matrix OperatorModel::apply_word(const TimeWord& t, const OperatorTuple& ms,
                                 Matrix x) const {
  for (std::size_t i = t.size(); i-- > 0;) x = act(t[i], ms[i], x);
  return x;
}

Matrix OperatorModel::apply_word_adjoint(const TimeWord& t, const OperatorTuple& ms,
                                         Matrix x) const {
  // (π_1 ⋯ π_k)* x = π_1* (⋯ (π_k* x))
  for (std::size_t i = 0; i < t.size(); ++i) x = act_adjoint(t[i], ms[i], x);
  return x;
}

Matrix OperatorModel::pair(const Matrix& x, const Matrix& y) const {
  Matrix out = Matrix::Zero(x.cols() / mixture_rank(), y.cols() / mixture_rank());
  Index xc = x.cols() / mixture_rank();
  Index yc = y.cols() / mixture_rank();
  for (Index m = 0; m < mixture_rank(); ++m)
    out.noalias() += x.middleCols(m * xc, xc).adjoint() * y.middleCols(m * yc, yc);
  return out;
}

Matrix OperatorModel::eval(const TimeWord& t, const OperatorTuple& ms) const {
  check_word(t, ms, outcomes(), dim());
  return pair(embedding(), apply_word(t, ms, embedding()));
}

Matrix OperatorModel::gram(const std::vector<WordSample>& samples) const {
  Index n = dim();
  Index r = mixture_rank();
  Index d = space_dim();
  Index count = static_cast<Index>(samples.size());
  // stack mixture blocks vertically so the Gram is a single product
  Matrix left(r * d, count * n), right(r * d, count * n);
  for (Index i = 0; i < count; ++i) {
    const auto& s = samples[i];
    check_word(s.word, s.ops, outcomes(), n);
    // W_{T^# × T'}(M⃗^# × M⃗') = X* Y with X = (Φ* π_{T^#}(M⃗^#))*
    TimeWord lw = reversed(s.word);
    OperatorTuple lops = adjoint_reversed(s.ops);
    Matrix x = apply_word_adjoint(lw, lops, embedding());
    Matrix y = apply_word(s.word, s.ops, embedding());
    for (Index m = 0; m < r; ++m) {
      left.block(m * d, i * n, d, n) = x.middleCols(m * n, n);
      right.block(m * d, i * n, d, n) = y.middleCols(m * n, n);
    }
  }
  return left.adjoint() * right;
}

CorrelationSystem::CorrelationSystem(FiniteVonNeumannAlgebra algebra,
                                     OutcomeSpace outcomes, Representation pi_in,
                                     std::vector<Representation> pi_atom, Matrix v)
    : algebra_(std::move(algebra)),
      outcomes_(std::move(outcomes)),
      pi_in_(std::move(pi_in)),
      pi_atom_(std::move(pi_atom)),
      v_(std::move(v)) {
  if (pi_atom_.size() != outcomes_.size()) {
    throw Error(ErrorKind::Dimension, "one atom representation per outcome expected");
  }
  Index dl = v_.rows();
  if (v_.cols() != algebra_.dim()) {
    throw Error(ErrorKind::Dimension, "V must map H into L");
  }
  auto check_rep = [&](const Representation& r) {
    if (r.dim != dl || r.images.size() != algebra_.basis().size()) {
      throw Error(ErrorKind::Dimension, "representation has wrong shape");
    }
    for (const auto& im : r.images)
      if (im.rows() != dl || im.cols() != dl)
        throw Error(ErrorKind::Dimension, "representation image has wrong shape");
  };
  check_rep(pi_in_);
  for (const auto& r : pi_atom_) check_rep(r);
}

Matrix CorrelationSystem::pi(const Letter& t, const Matrix& m) const {
  if (t.is_in()) return pi_in_(m);
  outcomes_.check(*t.event);
  Vector c = algebra_.coordinates(m);
  Matrix out = Matrix::Zero(dim_l(), dim_l());
  for (auto s : t.event->members())
    for (Index k = 0; k < c.size(); ++k)
      if (c(k) != Complex(0.0)) out += c(k) * pi_atom_[s].images[k];
  return out;
}

Matrix CorrelationSystem::eval_W(const TimeWord& t, const OperatorTuple& ms,
                                 const Tolerance& tol) const {
  check_word(t, ms, outcomes_, dim());
  for (const auto& m : ms) {
    auto in = algebra_.contains(m, tol.abs);
    if (!in.ok) {
      throw Error(ErrorKind::OutsideAlgebra, "slot operator is not in the algebra",
                  in.residual);
    }
  }
  Matrix x = v_;
  for (std::size_t i = t.size(); i-- > 0;) x = pi(t[i], ms[i]) * x;
  return v_.adjoint() * x;
}

CorrelationSystem::InvariantReport CorrelationSystem::check_invariants() const {
  InvariantReport rep;
  auto r = pi_in_.check();
  rep.representation = std::max({r.multiplicativity, r.star, r.unit});
  std::vector<Matrix> units;
  for (const auto& pa : pi_atom_) {
    auto ra = pa.check();
    rep.representation = std::max({rep.representation, ra.multiplicativity, ra.star});
    units.push_back(pa.unit());
  }
  auto pvm = is_pvm(units);
  rep.pvm = std::max({pvm.completeness, pvm.idempotence, pvm.orthogonality,
                      pvm.hermiticity});
  for (std::size_t k = 0; k < algebra_.basis().size(); ++k) {
    const Matrix& b = algebra_.basis()[k];
    rep.intertwining =
        max_op_norm(rep.intertwining, pi_in_.images[k] * v_ - v_ * b);
    for (const auto& pa : pi_atom_) {
      rep.closure = std::max(
          rep.closure,
          algebra_.contains(v_.adjoint() * pa.images[k] * v_).residual);
    }
  }
  return rep;
}

namespace {

class SystemModel : public OperatorModel {
 public:
  explicit SystemModel(CorrelationSystem sys) : sys_(std::move(sys)) {}
  Index dim() const override { return sys_.dim(); }
  const FiniteVonNeumannAlgebra& algebra() const override { return sys_.algebra(); }
  const OutcomeSpace& outcomes() const override { return sys_.outcomes(); }
  Index space_dim() const override { return sys_.dim_l(); }
  const Matrix& embedding() const override { return sys_.v(); }
  Matrix act(const Letter& t, const Matrix& m, const Matrix& x) const override {
    return sys_.pi(t, m) * x;
  }
  Matrix act_adjoint(const Letter& t, const Matrix& m,
                     const Matrix& x) const override {
    return sys_.pi(t, m).adjoint() * x;
  }

 private:
  CorrelationSystem sys_;
};

}  // namespace

std::shared_ptr<const OperatorModel> CorrelationSystem::model() const {
  return std::make_shared<SystemModel>(*this);
}

bool AxiomReport::all_passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const AxiomResult& r) { return r.passed; });
}

const AxiomResult& AxiomReport::operator[](const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return r;
  throw Error(ErrorKind::InvalidArgument, "no axiom named " + name);
}

namespace {

struct Sampler {
  const CorrelationModel& model;
  std::mt19937_64 rng;
  std::normal_distribution<double> gauss{0.0, 1.0};

  std::size_t uniform(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  }
  Complex scalar() { return {gauss(rng), gauss(rng)}; }
  Matrix op() {
    const auto& alg = model.algebra();
    Vector c(alg.linear_dim());
    for (Index k = 0; k < c.size(); ++k) c(k) = scalar();
    Matrix m = alg.from_coordinates(c);
    return m / op_norm(m);
  }
  Event event(bool nonempty) {
    std::size_t n = model.outcomes().size();
    for (;;) {
      Event e(n);
      for (std::size_t i = 0; i < n; ++i) e.set(i, uniform(2) == 1);
      if (!nonempty || !e.empty()) return e;
    }
  }
  Letter letter() {
    std::size_t n = model.outcomes().size();
    std::size_t k = uniform(n + 1);
    return k == 0 ? Letter::in() : Letter::atom(n, k - 1);
  }
  WordSample word(std::size_t len) {
    WordSample w;
    for (std::size_t i = 0; i < len; ++i) {
      w.word.push_back(letter());
      w.ops.push_back(op());
    }
    return w;
  }
  std::size_t length(std::size_t lo, std::size_t hi) {
    return lo + uniform(hi - lo + 1);
  }
};

}  // namespace

AxiomReport verify_axioms(const CorrelationModel& model, std::size_t depth,
                          std::size_t samples, std::uint64_t seed,
                          const Tolerance& tol) {
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "depth must be >= 1");
  Sampler rs{model, std::mt19937_64(seed)};
  const std::size_t probes = std::max<std::size_t>(20, samples / 5);
  const Index n = model.dim();
  const Matrix id = Matrix::Identity(n, n);
  const std::size_t atoms = model.outcomes().size();
  AxiomReport rep;
  auto finish = [&](const std::string& name, double residual, std::string note) {
    rep.results.push_back({name, residual <= tol.abs, residual, std::move(note)});
  };

  // MC1: separate linearity in every slot
  double r1 = 0.0;
  for (std::size_t p = 0; p < probes; ++p) {
    auto w = rs.word(rs.length(1, depth));
    std::size_t slot = rs.uniform(w.ops.size());
    Matrix a = rs.op(), b = rs.op();
    Complex alpha = rs.scalar(), beta = rs.scalar();
    auto with = [&](const Matrix& m) {
      auto ops = w.ops;
      ops[slot] = m;
      return model.eval(w.word, ops);
    };
    r1 = max_op_norm(r1, with(alpha * a + beta * b) - alpha * with(a) -
                              beta * with(b));
  }
  finish("MC1", r1,
         "linearity only; ultraweak continuity is automatic in finite dimension");

  // MC2: positivity of the block Gram matrix
  std::vector<WordSample> ws;
  ws.push_back({{Letter::in()}, {id}});
  for (std::size_t s = 0; s < atoms; ++s) ws.push_back({{Letter::atom(atoms, s)}, {id}});
  while (ws.size() < std::max(samples, ws.size())) ws.push_back(rs.word(rs.length(1, depth)));
  Matrix g = model.gram(ws);
  double herm = max_abs(g - g.adjoint());
  double lo = eigh(g).values.minCoeff();
  double r2 = std::max(0.0, -lo);
  rep.results.push_back({"MC2", lo >= -tol.psd_slack && herm <= tol.abs,
                         std::max(r2, herm),
                         std::to_string(ws.size()) + " words, min eigenvalue " +
                             std::to_string(lo)});

  // MC3: left/right multiplication by `in`
  double r3 = 0.0;
  for (std::size_t p = 0; p < probes; ++p) {
    auto w = rs.word(rs.length(1, depth));
    Matrix m = rs.op();
    Matrix base = model.eval(w.word, w.ops);
    TimeWord lw = join(TimeWord{Letter::in()}, w.word);
    TimeWord rw = join(w.word, TimeWord{Letter::in()});
    r3 = max_op_norm(r3, m * base - model.eval(lw, join(OperatorTuple{m}, w.ops)));
    r3 = max_op_norm(r3, base * m - model.eval(rw, join(w.ops, OperatorTuple{m})));
  }
  finish("MC3", r3, "");

  // MC4: merging adjacent in/in or event/event letters
  double r4 = 0.0;
  for (std::size_t p = 0; p < probes; ++p) {
    auto w = rs.word(rs.length(2, std::max<std::size_t>(2, depth)));
    std::size_t k = rs.uniform(w.word.size() - 1);
    Letter merged;
    if (rs.uniform(2) == 0) {
      w.word[k] = w.word[k + 1] = Letter::in();
      merged = Letter::in();
    } else {
      Event a = rs.event(false), b = rs.event(false);
      w.word[k] = Letter::of(a);
      w.word[k + 1] = Letter::of(b);
      merged = Letter::of(a & b);
    }
    TimeWord mw(w.word.begin(), w.word.begin() + k);
    OperatorTuple mo(w.ops.begin(), w.ops.begin() + k);
    mw.push_back(merged);
    mo.push_back(w.ops[k] * w.ops[k + 1]);
    mw.insert(mw.end(), w.word.begin() + k + 2, w.word.end());
    mo.insert(mo.end(), w.ops.begin() + k + 2, w.ops.end());
    r4 = max_op_norm(r4, model.eval(w.word, w.ops) - model.eval(mw, mo));
  }
  finish("MC4", r4, "");

  // MC5: unit slots on in/S letters drop out; W_in(1) = W_S(1) = 1
  double r5 = op_norm(model.eval({Letter::in()}, {id}) - id);
  r5 = max_op_norm(r5, model.eval({Letter::of(Event(atoms, true))}, {id}) - id);
  for (std::size_t p = 0; p < probes; ++p) {
    auto w = rs.word(rs.length(2, std::max<std::size_t>(2, depth)));
    std::size_t k = rs.uniform(w.word.size());
    w.word[k] = rs.uniform(2) == 0 ? Letter::in() : Letter::of(Event(atoms, true));
    w.ops[k] = id;
    TimeWord hw = w.word;
    OperatorTuple ho = w.ops;
    hw.erase(hw.begin() + k);
    ho.erase(ho.begin() + k);
    r5 = max_op_norm(r5, model.eval(w.word, w.ops) - model.eval(hw, ho));
  }
  finish("MC5", r5, "");

  // MC6: additivity over disjoint decompositions of an event
  double r6 = 0.0;
  for (std::size_t p = 0; p < probes; ++p) {
    auto w = rs.word(rs.length(1, depth));
    std::size_t k = rs.uniform(w.word.size());
    Event delta = rs.event(true);
    std::vector<Event> parts(3, Event(atoms));
    for (auto s : delta.members()) parts[rs.uniform(3)].set(s);
    w.word[k] = Letter::of(delta);
    Matrix whole = model.eval(w.word, w.ops);
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& part : parts) {
      if (part.empty()) continue;
      w.word[k] = Letter::of(part);
      sum += model.eval(w.word, w.ops);
    }
    r6 = max_op_norm(r6, whole - sum);
  }
  finish("MC6", r6, "");

  double ra = 0.0;
  for (std::size_t p = 0; p < probes; ++p) {
    auto w = rs.word(rs.length(1, depth));
    Matrix lhs = model.eval(w.word, w.ops).adjoint();
    Matrix rhs = model.eval(reversed(w.word), adjoint_reversed(w.ops));
    ra = max_op_norm(ra, lhs - rhs);
  }
  finish("adjoint", ra, "W_T(M)* = W_{T#}(M#)");
  return rep;
}

CPInstrument induced_instrument(const CorrelationSystem& sys, const Tolerance& tol) {
  const auto& alg = sys.algebra();
  Index n = sys.dim();
  std::vector<KrausFamily> kraus;
  for (std::size_t s = 0; s < sys.outcomes().size(); ++s) {
    const Representation& pa = sys.pi_atom(s);
    for (const auto& im : pa.images) {
      auto in = alg.contains(sys.v().adjoint() * im * sys.v(), tol.abs);
      if (!in.ok) {
        throw Error(ErrorKind::OutsideAlgebra,
                    "correlation value leaves the algebra", in.residual);
      }
    }
    Matrix c = heisenberg_choi(
        [&](const Matrix& m) { return Matrix(sys.v().adjoint() * pa(m) * sys.v()); }, n);
    kraus.push_back(kraus_from_choi(c, n, tol));
  }
  return {alg, sys.outcomes(), std::move(kraus)};
}

CorrelationSystem from_instrument(const CPInstrument& inst,
                                  const std::optional<std::string>& anchor,
                                  const Tolerance& tol) {
  auto rep = instrument_representation(inst, tol);
  const auto& alg = inst.algebra();
  std::size_t anchor_idx = anchor ? inst.outcomes().index_of(*anchor) : 0;
  Index n = inst.dim();
  Index dk = rep.dim_k;
  Index dl = n + dk;

  // U = [[0, −V*], [V, 1 − VV*]] on H ⊕ K
  Matrix u = Matrix::Zero(dl, dl);
  u.block(0, n, n, dk) = -rep.v.adjoint();
  u.block(n, 0, dk, n) = rep.v;
  u.block(n, n, dk, dk) = Matrix::Identity(dk, dk) - rep.v * rep.v.adjoint();

  Representation pi_in{alg, dl, {}};
  std::vector<Representation> pi_atom(inst.outcomes().size(),
                                      Representation{alg, dl, {}});
  for (std::size_t k = 0; k < alg.basis().size(); ++k) {
    const Matrix& b = alg.basis()[k];
    Matrix d = Matrix::Zero(dl, dl);
    d.block(0, 0, n, n) = b;
    d.block(n, n, dk, dk) = rep.pi0.images[k];
    pi_in.images.push_back(d);
    for (std::size_t s = 0; s < inst.outcomes().size(); ++s) {
      Matrix e = Matrix::Zero(dl, dl);
      if (s == anchor_idx) e.block(0, 0, n, n) = b;
      e.block(n, n, dk, dk) = rep.pi0.images[k] * rep.e0[s];
      pi_atom[s].images.push_back(u.adjoint() * e * u);
    }
  }
  Matrix v = Matrix::Zero(dl, n);
  v.topRows(n).setIdentity();
  return {alg, inst.outcomes(), std::move(pi_in), std::move(pi_atom), std::move(v)};
}

KernelTableResult from_kernel_table(const CorrelationModel& table,
                                    std::size_t table_max_length, std::size_t depth,
                                    const std::vector<Matrix>& generators,
                                    const Tolerance& tol) {
  if (depth < 2) {
    throw Error(ErrorKind::InvalidArgument, "from_kernel_table needs depth >= 2");
  }
  if (table_max_length < 2 * depth + 2) {
    throw Error(ErrorKind::InsufficientDepth,
                "table answers words up to length " + std::to_string(table_max_length) +
                    ", need " + std::to_string(2 * depth + 2),
                static_cast<double>(table_max_length));
  }
  const auto& alg = table.algebra();
  const auto& outcomes = table.outcomes();
  Index n = table.dim();
  std::size_t atoms = outcomes.size();

  std::vector<Matrix> ops{Matrix::Identity(n, n)};
  for (const auto& g : generators) {
    auto in = alg.contains(g, tol.abs);
    if (!in.ok) {
      throw Error(ErrorKind::OutsideAlgebra, "generator is not in the algebra",
                  in.residual);
    }
    ops.push_back(g);
  }
  if (generators.empty())
    ops.insert(ops.end(), alg.basis().begin(), alg.basis().end());
  std::size_t nops = ops.size();
  std::size_t ncodes = (atoms + 1) * nops;
  auto letter_of = [&](std::size_t code) {
    std::size_t l = code / nops;
    return l == 0 ? Letter::in() : Letter::atom(atoms, l - 1);
  };

  // C_d: all code sequences of length 1..depth
  std::vector<std::vector<std::size_t>> index;
  std::map<std::vector<std::size_t>, std::size_t> lookup;
  std::vector<std::vector<std::size_t>> layer{{}};
  std::size_t shallow = 0;  // |C_{d-1}|
  for (std::size_t len = 1; len <= depth; ++len) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& w : layer)
      for (std::size_t c = 0; c < ncodes; ++c) {
        auto x = w;
        x.push_back(c);
        next.push_back(x);
      }
    for (const auto& w : next) {
      lookup[w] = index.size();
      index.push_back(w);
    }
    if (len == depth - 1) shallow = index.size();
    layer = std::move(next);
  }

  std::vector<WordSample> samples;
  for (const auto& w : index) {
    WordSample s;
    for (auto c : w) {
      s.word.push_back(letter_of(c));
      s.ops.push_back(ops[c % nops]);
    }
    samples.push_back(std::move(s));
  }
  Matrix g = table.gram(samples);
  g = 0.5 * (g + g.adjoint());
  double lo = eigh(g).values.minCoeff();
  if (lo < -tol.psd_slack) {
    throw Error(ErrorKind::KernelNotPositive,
                "correlation table violates positivity", lo);
  }
  auto fac = psd_factorize(g, n, tol);
  Index dl = fac.rank;

  Matrix a(dl, static_cast<Index>(shallow) * n);
  for (std::size_t i = 0; i < shallow; ++i)
    a.middleCols(static_cast<Index>(i) * n, n) = fac.factors[i];
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  double cutoff = tol.abs * (1.0 + (sv.size() ? sv(0) : 0.0));
  Index rank_a = (sv.array() > cutoff).count();
  Matrix pinv = svd.matrixV().leftCols(rank_a) *
                sv.head(rank_a).cwiseInverse().cast<Complex>().asDiagonal() *
                svd.matrixU().leftCols(rank_a).adjoint();

  // shifted images on the generating operators
  auto shift = [&](std::size_t letter, std::size_t op) {
    Matrix b(dl, static_cast<Index>(shallow) * n);
    std::size_t code = letter * nops + op;
    for (std::size_t i = 0; i < shallow; ++i) {
      std::vector<std::size_t> w{code};
      w.insert(w.end(), index[i].begin(), index[i].end());
      b.middleCols(static_cast<Index>(i) * n, n) = fac.factors[lookup.at(w)];
    }
    return Matrix(b * pinv);
  };

  // express the algebra basis through the generating operators
  Matrix coords(alg.linear_dim(), static_cast<Index>(nops));
  for (std::size_t o = 0; o < nops; ++o)
    coords.col(static_cast<Index>(o)) = alg.coordinates(ops[o]);
  Matrix alpha = coords.completeOrthogonalDecomposition().pseudoInverse();
  double span_err = max_abs(coords * alpha -
                            Matrix::Identity(alg.linear_dim(), alg.linear_dim()));
  if (span_err > tol.abs * 10) {
    throw Error(ErrorKind::InvalidArgument,
                "generators together with 1 must span the algebra", span_err);
  }

  auto build = [&](std::size_t letter) {
    std::vector<Matrix> gen_images;
    for (std::size_t o = 0; o < nops; ++o) gen_images.push_back(shift(letter, o));
    Representation r{alg, dl, {}};
    for (Index k = 0; k < alg.linear_dim(); ++k) {
      Matrix im = Matrix::Zero(dl, dl);
      for (std::size_t o = 0; o < nops; ++o) im += alpha(static_cast<Index>(o), k) * gen_images[o];
      r.images.push_back(std::move(im));
    }
    return r;
  };
  Representation pi_in = build(0);
  std::vector<Representation> pi_atom;
  for (std::size_t s = 0; s < atoms; ++s) pi_atom.push_back(build(s + 1));
  Matrix v = fac.factors[lookup.at({0})];
  return {CorrelationSystem(alg, outcomes, std::move(pi_in), std::move(pi_atom),
                            std::move(v)),
          rank_a == dl, index.size()};
}

}  // namespace qdil
