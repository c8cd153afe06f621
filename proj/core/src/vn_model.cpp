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

#include "qdil/vn_model.hpp"

#include <cmath>
#include <numbers>

#include "qdil/error.hpp"

namespace qdil {

Matrix dft_matrix(Index d) {
  Matrix f(d, d);
  double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index j = 0; j < d; ++j)
    for (Index k = 0; k < d; ++k)
      f(j, k) = std::polar(scale, 2.0 * std::numbers::pi * static_cast<double>((j * k) % d) /
                                      static_cast<double>(d));
  return f;
}

MeasuringProcess DiscreteVNModel::build(const Tolerance& tol) const {
  Index n = observable.rows();
  Index d = meter_dim;
  if (observable.cols() != n || n == 0) {
    throw Error(ErrorKind::Dimension, "observable must be square");
  }
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "meter dimension must be >= 1");
  double herm = hermiticity_residual(observable);
  if (herm > tol.abs) throw Error(ErrorKind::NotHermitian, "observable is not Hermitian", herm);
  if (pointer_state.size() != d) {
    throw Error(ErrorKind::Dimension, "pointer state must live in C^d");
  }
  double norm_err = std::abs(pointer_state.norm() - 1.0);
  if (norm_err > tol.abs) {
    throw Error(ErrorKind::NotState, "pointer state is not normalised", norm_err);
  }

  // exp(−iλ A ⊗ P) = Σ_k P_k ⊗ F diag(e^{−iλ a_k q}) F*
  auto eig = eigh(observable);
  Matrix f = dft_matrix(d);
  Matrix u = Matrix::Zero(n * d, n * d);
  for (Index k = 0; k < n; ++k) {
    Matrix pk = eig.vectors.col(k) * eig.vectors.col(k).adjoint();
    Vector phases(d);
    for (Index q = 0; q < d; ++q)
      phases(q) = std::polar(1.0, -coupling * eig.values(k) * static_cast<double>(q));
    u += tensor(pk, f * phases.asDiagonal() * f.adjoint());
  }

  MeasuringProcess mp;
  mp.algebra = FiniteVonNeumannAlgebra::full(n);
  mp.outcomes = OutcomeSpace::numbered(static_cast<std::size_t>(d));
  mp.dim_k = d;
  mp.sigma = pointer_state * pointer_state.adjoint();
  for (Index q = 0; q < d; ++q) mp.e.push_back(matrix_unit(d, q, q));
  mp.u = std::move(u);
  return mp;
}

CPInstrument modular_luders(const Matrix& observable, Index meter_dim,
                            const Tolerance& tol) {
  Index n = observable.rows();
  double herm = hermiticity_residual(observable);
  if (herm > tol.abs) throw Error(ErrorKind::NotHermitian, "observable is not Hermitian", herm);
  auto eig = eigh(observable);
  std::vector<Matrix> proj(meter_dim, Matrix::Zero(n, n));
  for (Index k = 0; k < n; ++k) {
    double a = eig.values(k);
    double r = std::round(a);
    if (std::abs(a - r) > 1e-6) {
      throw Error(ErrorKind::InvalidArgument, "observable spectrum is not integer", a);
    }
    auto q = static_cast<Index>(((static_cast<long long>(r) % meter_dim) + meter_dim) % meter_dim);
    proj[q] += eig.vectors.col(k) * eig.vectors.col(k).adjoint();
  }
  return luders_instrument(proj, OutcomeSpace::numbered(static_cast<std::size_t>(meter_dim)));
}

Vector gaussian_pointer(Index meter_dim, double width) {
  if (meter_dim < 1 || !(width > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "need meter_dim >= 1 and width > 0");
  }
  Vector a(meter_dim);
  for (Index j = 0; j < meter_dim; ++j) {
    double delta = static_cast<double>(std::min(j, meter_dim - j));
    a(j) = std::exp(-delta * delta / (2.0 * width * width));
  }
  return a / a.norm();
}

namespace {

Matrix ket_bra(const Vector& a, const Vector& b) { return a * b.adjoint(); }

Vector vec2(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

std::vector<Fixture> fixtures() {
  const double s = 1.0 / std::sqrt(2.0);
  Vector z0 = vec2(1, 0), z1 = vec2(0, 1);
  Vector xp = vec2(s, s), xm = vec2(s, -s);
  std::vector<Fixture> out;

  out.push_back({"identity", "single outcome, Kraus operator 1", "trivial instrument",
                 CPInstrument(2, OutcomeSpace({"1"}), {{Matrix::Identity(2, 2)}})});
  out.push_back({"luders-z", "projective measurement of σ_z with Lüders update",
                 "Lüders rule",
                 luders_instrument({ket_bra(z0, z0), ket_bra(z1, z1)},
                                   OutcomeSpace({"0", "1"}))});
  out.push_back({"luders-x", "projective measurement of σ_x with Lüders update",
                 "Lüders rule",
                 luders_instrument({ket_bra(xp, xp), ket_bra(xm, xm)},
                                   OutcomeSpace({"+", "-"}))});
  {
    double g = 0.5;
    Matrix k0(2, 2), k1(2, 2);
    k0 << 1, 0, 0, std::sqrt(1 - g);
    k1 << 0, std::sqrt(g), 0, 0;
    out.push_back({"amp-damp-0.5",
                   "amplitude damping γ = 0.5 with the jump recorded",
                   "photon-counting unravelling of amplitude damping",
                   CPInstrument(2, OutcomeSpace({"no-jump", "jump"}), {{k0}, {k1}})});
  }
  {
    Matrix h(2, 2);
    h << s, s, s, -s;
    out.push_back({"unitary-hadamard", "single outcome, Hadamard conjugation",
                   "unitary channel",
                   CPInstrument(2, OutcomeSpace({"1"}), {{h}})});
  }
  {
    std::vector<KrausFamily> kraus;
    for (int k = 0; k < 3; ++k) {
      double th = 2.0 * std::numbers::pi * k / 3.0;
      Vector psi = vec2(std::cos(th), std::sin(th));
      kraus.push_back({std::sqrt(2.0 / 3.0) * ket_bra(psi, psi)});
    }
    out.push_back({"trine", "trine POVM with square-root (Lüders-type) update",
                   "equiangular three-outcome qubit POVM",
                   CPInstrument(2, OutcomeSpace({"0", "1", "2"}), std::move(kraus))});
  }
  {
    Matrix p0 = Matrix::Zero(3, 3), p1 = Matrix::Zero(3, 3);
    p0(0, 0) = 1.0;
    p1(1, 1) = p1(2, 2) = 1.0;
    out.push_back({"luders-qutrit", "coarse projective measurement {0} | {1, 2} on a qutrit",
                   "Lüders rule", luders_instrument({p0, p1}, OutcomeSpace({"0", "12"}))});
  }
  return out;
}

std::vector<Fixture> restricted_fixtures() {
  std::vector<Fixture> out;
  for (auto& f : fixtures()) {
    FiniteVonNeumannAlgebra alg =
        f.instrument.dim() == 3
            ? FiniteVonNeumannAlgebra::block_diagonal({{1, 1}, {2, 1}})
            : FiniteVonNeumannAlgebra::diagonal(f.instrument.dim());
    std::string what = f.instrument.dim() == 3 ? "C ⊕ M_2" : "diagonal algebra";
    out.push_back({"restricted/" + f.name,
                   f.description + ", compressed onto the " + what,
                   f.source + " followed by the conditional expectation",
                   f.instrument.compressed_to(alg)});
  }
  return out;
}

Fixture fixture(const std::string& name) {
  auto pool = name.rfind("restricted/", 0) == 0 ? restricted_fixtures() : fixtures();
  for (auto& f : pool)
    if (f.name == name) return f;
  throw Error(ErrorKind::UnknownLabel, "no fixture named " + name);
}

}  // namespace qdil
