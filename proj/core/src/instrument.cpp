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

#include "qdil/instrument.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qdil/error.hpp"

namespace qdil {

Matrix heisenberg_choi(const HeisenbergMap& phi, Index dim) {
  Matrix c(dim * dim, dim * dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      c.block(i * dim, j * dim, dim, dim) = phi(matrix_unit(dim, i, j));
    }
  }
  return c;
}

KrausFamily kraus_from_choi(const Matrix& choi, Index dim, const Tolerance& tol) {
  if (choi.rows() != dim * dim || choi.cols() != dim * dim) {
    throw Error(ErrorKind::Dimension, "Choi matrix has wrong shape");
  }
  auto eig = eigh(choi);
  double lo = eig.values.minCoeff();
  if (lo < -tol.psd_slack) {
    throw Error(ErrorKind::ChoiNegative, "Choi matrix has a negative eigenvalue",
                lo);
  }
  double cutoff = tol.abs * (1.0 + eig.values.cwiseAbs().maxCoeff());
  KrausFamily out;
  for (Index k = eig.values.size() - 1; k >= 0; --k) {
    if (eig.values(k) <= cutoff) continue;
    Vector v = std::sqrt(eig.values(k)) * normalize_phase(eig.vectors.col(k));
    Matrix kr(dim, dim);
    // row i of K is the conjugate transpose of block i of v
    for (Index i = 0; i < dim; ++i) kr.row(i) = v.segment(i * dim, dim).adjoint();
    out.push_back(std::move(kr));
  }
  return out;
}

Matrix apply_kraus(const KrausFamily& kraus, const Matrix& m) {
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (const auto& k : kraus) out.noalias() += k.adjoint() * m * k;
  return out;
}

namespace {

void check_family(const std::vector<KrausFamily>& kraus, const OutcomeSpace& o,
                  Index dim) {
  if (kraus.size() != o.size()) {
    throw Error(ErrorKind::Dimension, "one Kraus family per outcome expected");
  }
  for (const auto& fam : kraus)
    for (const auto& k : fam)
      if (k.rows() != dim || k.cols() != dim)
        throw Error(ErrorKind::Dimension, "Kraus operator has wrong shape");
}

}  // namespace

CPInstrument::CPInstrument(FiniteVonNeumannAlgebra algebra, OutcomeSpace outcomes,
                           std::vector<KrausFamily> kraus)
    : algebra_(std::move(algebra)),
      outcomes_(std::move(outcomes)),
      kraus_(std::move(kraus)) {
  check_family(kraus_, outcomes_, algebra_.dim());
}

CPInstrument::CPInstrument(Index dim, OutcomeSpace outcomes,
                           std::vector<KrausFamily> kraus)
    : CPInstrument(FiniteVonNeumannAlgebra::full(dim), std::move(outcomes),
                   std::move(kraus)) {}

Matrix CPInstrument::apply_dual_atom(const Matrix& m, std::size_t atom) const {
  if (m.rows() != dim() || m.cols() != dim()) {
    throw Error(ErrorKind::Dimension, "apply_dual: operator has wrong shape");
  }
  return apply_kraus(kraus_.at(atom), m);
}

Matrix CPInstrument::apply_dual(const Matrix& m, const Event& event) const {
  outcomes_.check(event);
  if (m.rows() != dim() || m.cols() != dim()) {
    throw Error(ErrorKind::Dimension, "apply_dual: operator has wrong shape");
  }
  Matrix out = Matrix::Zero(dim(), dim());
  for (auto s : event.members()) out += apply_kraus(kraus_[s], m);
  return out;
}

Matrix CPInstrument::apply_predual(const Matrix& rho, const Event& event,
                                   const Tolerance& tol) const {
  outcomes_.check(event);
  if (rho.rows() != dim()) {
    throw Error(ErrorKind::Dimension, "apply_predual: state has wrong shape");
  }
  require_state(rho, tol);
  Matrix out = Matrix::Zero(dim(), dim());
  for (auto s : event.members())
    for (const auto& k : kraus_[s]) out.noalias() += k * rho * k.adjoint();
  return out;
}

double CPInstrument::outcome_probability(const Matrix& rho, const Event& event,
                                         const Tolerance& tol) const {
  return apply_predual(rho, event, tol).trace().real();
}

Posterior CPInstrument::posterior_state(const Matrix& rho, const Event& event,
                                        const Tolerance& tol) const {
  Matrix out = apply_predual(rho, event, tol);
  double p = out.trace().real();
  if (p <= tol.abs) return Indefinite{};
  return Matrix(out / p);
}

double CPInstrument::completeness_residual() const {
  Matrix sum = Matrix::Zero(dim(), dim());
  for (const auto& fam : kraus_)
    for (const auto& k : fam) sum.noalias() += k.adjoint() * k;
  return op_norm(sum - Matrix::Identity(dim(), dim()));
}

double CPInstrument::closure_residual() const {
  if (algebra_.is_full()) return 0.0;
  double worst = 0.0;
  for (std::size_t s = 0; s < kraus_.size(); ++s)
    for (const auto& b : algebra_.basis())
      worst = std::max(worst, algebra_.contains(apply_dual_atom(b, s)).residual);
  return worst;
}

void CPInstrument::validate(const Tolerance& tol) const {
  double c = completeness_residual();
  if (c > tol.abs) {
    throw Error(ErrorKind::Incomplete, "instrument is not normalized: ‖Σ K*K − 1‖ = " +
                                           std::to_string(c), c);
  }
  double r = closure_residual();
  if (r > tol.abs) {
    throw Error(ErrorKind::OutsideAlgebra,
                "instrument maps the algebra outside itself", r);
  }
}

std::vector<Matrix> CPInstrument::choi() const {
  std::vector<Matrix> out;
  for (std::size_t s = 0; s < kraus_.size(); ++s) {
    out.push_back(heisenberg_choi(
        [&](const Matrix& m) { return apply_dual_atom(m, s); }, dim()));
  }
  return out;
}

CpReport CPInstrument::verify_cp(const Tolerance& tol) const {
  CpReport rep;
  rep.cp = true;
  for (const auto& c : choi()) {
    double lo = eigh(c).values.minCoeff();
    rep.min_eigenvalue.push_back(lo);
    if (lo < -tol.psd_slack) rep.cp = false;
  }
  rep.completeness_residual = completeness_residual();
  rep.complete = rep.completeness_residual <= tol.abs;
  return rep;
}

RepeatabilityReport CPInstrument::is_weakly_repeatable(const Tolerance& tol) const {
  Matrix id = Matrix::Identity(dim(), dim());
  std::vector<Matrix> effects;
  for (std::size_t s = 0; s < kraus_.size(); ++s)
    effects.push_back(apply_dual_atom(id, s));
  double worst = 0.0;
  for (std::size_t s = 0; s < kraus_.size(); ++s) {
    for (std::size_t t = 0; t < kraus_.size(); ++t) {
      Matrix lhs = apply_dual_atom(effects[t], s);
      Matrix rhs = s == t ? effects[s] : Matrix::Zero(dim(), dim());
      worst = max_op_norm(worst, lhs - rhs);
    }
  }
  return {worst <= tol.abs, worst};
}

RepeatabilityReport CPInstrument::is_repeatable(const Tolerance& tol) const {
  double worst = 0.0;
  for (const auto& b : algebra_.basis()) {
    std::vector<Matrix> first;
    for (std::size_t t = 0; t < kraus_.size(); ++t)
      first.push_back(apply_dual_atom(b, t));
    for (std::size_t s = 0; s < kraus_.size(); ++s) {
      for (std::size_t t = 0; t < kraus_.size(); ++t) {
        Matrix lhs = apply_dual_atom(first[t], s);
        Matrix rhs = s == t ? first[s] : Matrix::Zero(dim(), dim());
        worst = max_op_norm(worst, lhs - rhs);
      }
    }
  }
  return {worst <= tol.abs, worst};
}

CoarseGraining CPInstrument::coarse_grain(
    const std::vector<Event>& generating_events,
    const std::map<std::size_t, std::string>& anchors) const {
  for (const auto& e : generating_events) outcomes_.check(e);
  std::size_t n = outcomes_.size();

  // atoms sharing membership in every generator form one cell
  std::vector<std::vector<bool>> signature(n);
  for (std::size_t s = 0; s < n; ++s)
    for (const auto& e : generating_events) signature[s].push_back(e.contains(s));
  std::vector<Event> cells;
  std::vector<std::vector<bool>> seen;
  for (std::size_t s = 0; s < n; ++s) {
    auto it = std::find(seen.begin(), seen.end(), signature[s]);
    if (it == seen.end()) {
      seen.push_back(signature[s]);
      cells.emplace_back(n);
      cells.back().set(s);
    } else {
      cells[it - seen.begin()].set(s);
    }
  }

  std::vector<std::size_t> anchor_of(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    auto found = anchors.find(c);
    if (found != anchors.end()) {
      std::size_t a = outcomes_.index_of(found->second);
      if (!cells[c].contains(a)) {
        throw Error(ErrorKind::InvalidArgument,
                    "anchor '" + found->second + "' is not in its cell");
      }
      anchor_of[c] = a;
    } else {
      auto mem = cells[c].members();
      anchor_of[c] = *std::min_element(mem.begin(), mem.end(),
                                       [&](std::size_t x, std::size_t y) {
                                         return outcomes_.label(x) < outcomes_.label(y);
                                       });
    }
  }
  for (const auto& [c, _] : anchors)
    if (c >= cells.size())
      throw Error(ErrorKind::InvalidArgument, "anchor refers to a missing cell");

  std::vector<KrausFamily> kraus(n);
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (auto s : cells[c].members())
      kraus[anchor_of[c]].insert(kraus[anchor_of[c]].end(), kraus_[s].begin(),
                                 kraus_[s].end());
  return {CPInstrument(algebra_, outcomes_, std::move(kraus)), std::move(cells),
          std::move(anchor_of)};
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t draw(const std::vector<double>& p, double tol, std::mt19937_64& rng) {
  double total = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > tol) {
      total += p[i];
      last = i;
    }
  double u = uniform01(rng) * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= tol) continue;
    acc += p[i];
    if (u < acc) return i;
  }
  return last;
}

}  // namespace

std::vector<TrajectoryStep> CPInstrument::sample_trajectory(
    const Matrix& rho0, std::size_t steps, std::uint64_t seed,
    const Tolerance& tol) const {
  if (steps == 0) throw Error(ErrorKind::InvalidArgument, "steps must be >= 1");
  require_state(rho0, tol);
  std::mt19937_64 rng(seed);
  std::vector<TrajectoryStep> out;
  out.reserve(steps);
  Matrix rho = rho0;
  for (std::size_t k = 0; k < steps; ++k) {
    std::vector<Matrix> branch;
    std::vector<double> p;
    for (std::size_t s = 0; s < kraus_.size(); ++s) {
      Matrix b = Matrix::Zero(dim(), dim());
      for (const auto& kr : kraus_[s]) b.noalias() += kr * rho * kr.adjoint();
      p.push_back(b.trace().real());
      branch.push_back(std::move(b));
    }
    std::size_t s = draw(p, tol.abs, rng);
    rho = branch[s] / p[s];
    rho = 0.5 * (rho + rho.adjoint());
    out.push_back({s, rho});
  }
  return out;
}

std::vector<std::size_t> CPInstrument::sample_counts(
    const Matrix& rho, std::size_t shots, std::uint64_t seed,
    const Tolerance& tol) const {
  std::vector<double> p;
  for (std::size_t s = 0; s < kraus_.size(); ++s)
    p.push_back(outcome_probability(rho, outcomes_.atom(s), tol));
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> counts(p.size(), 0);
  for (std::size_t k = 0; k < shots; ++k) ++counts[draw(p, tol.abs, rng)];
  return counts;
}

CPInstrument CPInstrument::compressed_to(const FiniteVonNeumannAlgebra& alg,
                                         const Tolerance& tol) const {
  if (alg.dim() != dim()) {
    throw Error(ErrorKind::Dimension, "compressed_to: algebra dimension differs");
  }
  std::vector<KrausFamily> kraus;
  for (std::size_t s = 0; s < kraus_.size(); ++s) {
    Matrix c = heisenberg_choi(
        [&](const Matrix& m) {
          return alg.conditional_expectation(apply_dual_atom(m, s));
        },
        dim());
    kraus.push_back(kraus_from_choi(c, dim(), tol));
  }
  return {alg, outcomes_, std::move(kraus)};
}

CPInstrument CPInstrument::minimized(const Tolerance& tol) const {
  std::vector<KrausFamily> kraus;
  for (const auto& c : choi()) kraus.push_back(kraus_from_choi(c, dim(), tol));
  return {algebra_, outcomes_, std::move(kraus)};
}

MapInstrument::MapInstrument(Index dim, OutcomeSpace outcomes,
                             std::vector<Matrix> choi)
    : dim_(dim), outcomes_(std::move(outcomes)), choi_(std::move(choi)) {
  if (choi_.size() != outcomes_.size()) {
    throw Error(ErrorKind::Dimension, "one Choi matrix per outcome expected");
  }
  for (const auto& c : choi_)
    if (c.rows() != dim * dim || c.cols() != dim * dim)
      throw Error(ErrorKind::Dimension, "Choi matrix has wrong shape");
}

Matrix MapInstrument::apply_dual_atom(const Matrix& m, std::size_t atom) const {
  // Φ(M) = Σ_ij M_ij Φ(E_ij)
  const Matrix& c = choi_.at(atom);
  Matrix out = Matrix::Zero(dim_, dim_);
  for (Index i = 0; i < dim_; ++i)
    for (Index j = 0; j < dim_; ++j)
      out += m(i, j) * c.block(i * dim_, j * dim_, dim_, dim_);
  return out;
}

CpReport MapInstrument::verify_cp(const Tolerance& tol) const {
  CpReport rep;
  rep.cp = true;
  Matrix total = Matrix::Zero(dim_, dim_);
  Matrix id = Matrix::Identity(dim_, dim_);
  for (std::size_t s = 0; s < choi_.size(); ++s) {
    Matrix c = heisenberg_choi(
        [&](const Matrix& m) { return apply_dual_atom(m, s); }, dim_);
    double lo = eigh(c).values.minCoeff();
    rep.min_eigenvalue.push_back(lo);
    if (lo < -tol.psd_slack) rep.cp = false;
    total += apply_dual_atom(id, s);
  }
  rep.completeness_residual = op_norm(total - id);
  rep.complete = rep.completeness_residual <= tol.abs;
  return rep;
}

CPInstrument MapInstrument::to_cp(const Tolerance& tol) const {
  std::vector<KrausFamily> kraus;
  for (const auto& c : choi_) kraus.push_back(kraus_from_choi(c, dim_, tol));
  return {dim_, outcomes_, std::move(kraus)};
}

double instrument_distance(const CPInstrument& a, const CPInstrument& b) {
  if (a.dim() != b.dim() || a.outcomes().size() != b.outcomes().size()) {
    throw Error(ErrorKind::Dimension, "instrument_distance: shapes differ");
  }
  double worst = 0.0;
  for (std::size_t s = 0; s < a.outcomes().size(); ++s)
    for (const auto& e : a.algebra().basis())
      worst = std::max(worst,
                       max_abs(a.apply_dual_atom(e, s) - b.apply_dual_atom(e, s)));
  return worst;
}

CPInstrument luders_instrument(const std::vector<Matrix>& projections,
                               OutcomeSpace outcomes) {
  if (projections.empty()) {
    throw Error(ErrorKind::InvalidArgument, "luders_instrument: no projections");
  }
  std::vector<KrausFamily> kraus;
  for (const auto& p : projections) {
    if (max_abs(p) == 0.0) kraus.push_back({});
    else kraus.push_back({p});
  }
  return {projections.front().rows(), std::move(outcomes), std::move(kraus)};
}

}  // namespace qdil
