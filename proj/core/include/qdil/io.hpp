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

#include <filesystem>
#include <nlohmann/json.hpp>
#include <variant>

#include "qdil/algebra.hpp"
#include "qdil/correlations.hpp"
#include "qdil/instrument.hpp"
#include "qdil/kolmogorov.hpp"
#include "qdil/measuring_process.hpp"

namespace qdil::io {

/** Key order is preserved so that written files diff cleanly. */
using Json = nlohmann::ordered_json;

// Complex numbers are [re, im]; matrices are arrays of rows. Every reader
// throws Error(Schema) on malformed input.

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json algebra_to_json(const FiniteVonNeumannAlgebra& alg);
/** Missing or "full" means B(C^dim). */
FiniteVonNeumannAlgebra algebra_from_json(const Json& j, Index dim);

/**
 * {"type": "instrument", "dim", "outcomes", "algebra", "kraus": {label: [K…]}}
 * or, map-level, {"type": "instrument-choi", "dim", "outcomes", "choi": {label: C}}.
 * Readers also accept "dimH" in place of "dim".
 */
Json instrument_to_json(const CPInstrument& inst);
/** Map-level files are converted with MapInstrument::to_cp (may throw ChoiNegative). */
CPInstrument instrument_from_json(const Json& j, const Tolerance& tol = {});
Json map_instrument_to_json(const MapInstrument& inst);

/** {"type": "measuring-process", "dimH", "dimK", "outcomes", "algebra", "sigma", "pvm", "u"} */
Json process_to_json(const MeasuringProcess& mp);
MeasuringProcess process_from_json(const Json& j);

/** {"type": "correlation-system", "dimH", "dimL", "outcomes", "algebra", "v", "pi_in", "pi_atoms"} */
Json system_to_json(const CorrelationSystem& sys);
CorrelationSystem system_from_json(const Json& j);

/**
 * {"type": "kernel", "dim", "labels", "entries": {"c|c'": matrix}} with only
 * the upper triangle (c at or before c' in label order) stored.
 */
Json kernel_to_json(const OperatorKernel& k);
OperatorKernel kernel_from_json(const Json& j);

/** {"type": "state", "rho"} or a bare matrix. */
Matrix state_from_json(const Json& j);
Json state_to_json(const Matrix& rho);

Json read_file(const std::filesystem::path& path);
/** Pretty-printed with two-space indent and a trailing newline. */
void write_file(const std::filesystem::path& path, const Json& j);

}  // namespace qdil::io
