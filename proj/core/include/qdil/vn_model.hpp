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

#pragma once

#include <string>
#include <vector>

#include "qdil/instrument.hpp"
#include "qdil/measuring_process.hpp"

namespace qdil {

/**
 * Discrete von Neumann measurement: a system observable A coupled to a
 * d-level meter by U = exp(−iλ A ⊗ P_d), where Q_d = diag(0, …, d−1) is the
 * pointer and P_d = F Q_d F* its discrete Fourier conjugate. No finite pair
 * satisfies [Q, P] = i, so this is a substitute, not a canonical pair.
 */
struct DiscreteVNModel {
  Matrix observable;
  Index meter_dim = 2;
  Vector pointer_state;
  double coupling = 0.0;

  /** Measuring process with σ = |α⟩⟨α|, E = spectral projections of Q_d. */
  MeasuringProcess build(const Tolerance& tol = {}) const;
};

/** Unitary DFT matrix F_jk = ω^{jk}/√d, ω = e^{2πi/d}. */
Matrix dft_matrix(Index d);

/**
 * Lüders instrument of the pointer readings an exact shift would produce:
 * P_q = Σ_{a ≡ q mod d} spectral projection of A at a. Needs an integer
 * spectrum; outcomes are "0", …, "d−1".
 */
CPInstrument modular_luders(const Matrix& observable, Index meter_dim,
                            const Tolerance& tol = {});

/** Normalised pointer amplitudes ∝ exp(−δ²/(2w²)), δ the circular distance to 0. */
Vector gaussian_pointer(Index meter_dim, double width);

struct Fixture {
  std::string name;
  std::string description;
  std::string source;
  CPInstrument instrument;
};

/** Named instruments on the full algebra. */
std::vector<Fixture> fixtures();

/** The same catalog compressed onto a non-full algebra (diagonal or block). */
std::vector<Fixture> restricted_fixtures();

/** Look up by name in `fixtures()` or, with a "restricted/" prefix, in the other. */
Fixture fixture(const std::string& name);

}  // namespace qdil
