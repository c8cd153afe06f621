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

#include "qdil/io.hpp"

#include <fstream>

#include "qdil/error.hpp"

namespace qdil::io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::Schema, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Index count_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    schema(std::string("field \"") + key + "\" must be a positive integer");
  }
  return v.get<Index>();
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    schema("complex numbers are [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

void expect_type(const Json& j, const std::string& type) {
  if (!j.is_object()) schema("expected a JSON object");
  if (j.contains("type") && j["type"] != type) {
    schema("expected type \"" + type + "\", got " + j["type"].dump());
  }
}

void expect_shape(const Matrix& m, Index rows, Index cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    schema(what + " must be " + std::to_string(rows) + "×" + std::to_string(cols));
  }
}

OutcomeSpace outcomes_from_json(const Json& j) {
  const Json& o = field(j, "outcomes");
  if (!o.is_array() || o.empty()) schema("\"outcomes\" must be a nonempty array of labels");
  std::vector<std::string> labels;
  for (const auto& l : o) {
    if (!l.is_string()) schema("outcome labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  try {
    return OutcomeSpace(std::move(labels));
  } catch (const Error& e) {
    schema(e.what());
  }
}

std::vector<Matrix> matrices_from_json(const Json& j) {
  if (!j.is_array()) schema("expected an array of matrices");
  std::vector<Matrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

Json matrices_to_json(const std::vector<Matrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(matrix_to_json(m));
  return out;
}

/** Per-label object, read in outcome order. */
const Json& labelled(const Json& obj, const OutcomeSpace& o, std::size_t s,
                     const char* what) {
  if (!obj.is_object() || !obj.contains(o.label(s))) {
    schema(std::string("\"") + what + "\" has no entry for outcome \"" + o.label(s) + "\"");
  }
  return obj.at(o.label(s));
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) schema("matrices are arrays of rows");
  Index rows = static_cast<Index>(j.size());
  Index cols = static_cast<Index>(j[0].size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Index>(j[i].size()) != cols) {
      schema("matrix rows have unequal lengths");
    }
    for (Index c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) schema("vectors are nonempty arrays");
  Vector v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

Json algebra_to_json(const FiniteVonNeumannAlgebra& alg) {
  if (alg.is_full()) return "full";
  Json out;
  out["dim"] = alg.dim();
  Json blocks = Json::array();
  for (const auto& b : alg.blocks()) blocks.push_back(Json::array({b.n, b.m}));
  out["blocks"] = blocks;
  out["basis_change"] = matrix_to_json(alg.basis_change());
  return out;
}

FiniteVonNeumannAlgebra algebra_from_json(const Json& j, Index dim) {
  if (j.is_null() || (j.is_string() && j == "full")) {
    return FiniteVonNeumannAlgebra::full(dim);
  }
  if (j.is_string()) {
    if (j == "diagonal") return FiniteVonNeumannAlgebra::diagonal(dim);
    if (j == "scalars") return FiniteVonNeumannAlgebra::scalars(dim);
    schema("unknown algebra shorthand " + j.dump());
  }
  if (!j.is_object()) schema("\"algebra\" must be an object or a shorthand string");
  if (count_field(j, "dim") != dim) schema("algebra dimension differs from dimH");
  std::vector<Block> blocks;
  const Json& bj = field(j, "blocks");
  if (!bj.is_array()) schema("\"blocks\" must be an array of [n, m] pairs");
  for (const auto& b : bj) {
    if (!b.is_array() || b.size() != 2 || !b[0].is_number_integer() ||
        !b[1].is_number_integer()) {
      schema("\"blocks\" must be an array of [n, m] pairs");
    }
    blocks.push_back({b[0].get<Index>(), b[1].get<Index>()});
  }
  Matrix basis = j.contains("basis_change") ? matrix_from_json(j["basis_change"])
                                             : Matrix::Identity(dim, dim);
  try {
    return FiniteVonNeumannAlgebra(dim, std::move(blocks), std::move(basis));
  } catch (const Error& e) {
    schema(std::string("invalid algebra: ") + e.what());
  }
}

Json instrument_to_json(const CPInstrument& inst) {
  Json out;
  out["type"] = "instrument";
  out["dim"] = inst.dim();
  out["outcomes"] = inst.outcomes().labels();
  out["algebra"] = algebra_to_json(inst.algebra());
  Json kraus = Json::object();
  for (std::size_t s = 0; s < inst.outcomes().size(); ++s)
    kraus[inst.outcomes().label(s)] = matrices_to_json(inst.kraus(s));
  out["kraus"] = kraus;
  return out;
}

Json map_instrument_to_json(const MapInstrument& inst) {
  Json out;
  out["type"] = "instrument-choi";
  out["dim"] = inst.dim();
  out["outcomes"] = inst.outcomes().labels();
  Json choi = Json::object();
  for (std::size_t s = 0; s < inst.outcomes().size(); ++s)
    choi[inst.outcomes().label(s)] = matrix_to_json(inst.choi()[s]);
  out["choi"] = choi;
  return out;
}

CPInstrument instrument_from_json(const Json& j, const Tolerance& tol) {
  if (!j.is_object()) schema("expected a JSON object");
  std::string type = j.value("type", "instrument");
  Index dim = count_field(j, j.contains("dim") ? "dim" : "dimH");
  OutcomeSpace outcomes = outcomes_from_json(j);
  if (type == "instrument-choi") {
    std::vector<Matrix> choi;
    for (std::size_t s = 0; s < outcomes.size(); ++s) {
      choi.push_back(matrix_from_json(labelled(field(j, "choi"), outcomes, s, "choi")));
      expect_shape(choi.back(), dim * dim, dim * dim, "Choi matrix");
    }
    return MapInstrument(dim, outcomes, std::move(choi)).to_cp(tol);
  }
  if (type != "instrument") schema("unknown instrument type \"" + type + "\"");
  auto alg = algebra_from_json(j.contains("algebra") ? j["algebra"] : Json(), dim);
  std::vector<KrausFamily> kraus;
  for (std::size_t s = 0; s < outcomes.size(); ++s) {
    kraus.push_back(matrices_from_json(labelled(field(j, "kraus"), outcomes, s, "kraus")));
    for (const auto& k : kraus.back()) expect_shape(k, dim, dim, "Kraus operator");
  }
  return {alg, outcomes, std::move(kraus)};
}

Json process_to_json(const MeasuringProcess& mp) {
  Json out;
  out["type"] = "measuring-process";
  out["dimH"] = mp.dim();
  out["dimK"] = mp.dim_k;
  out["outcomes"] = mp.outcomes.labels();
  out["algebra"] = algebra_to_json(mp.algebra);
  out["sigma"] = matrix_to_json(mp.sigma);
  Json pvm = Json::object();
  for (std::size_t s = 0; s < mp.outcomes.size(); ++s)
    pvm[mp.outcomes.label(s)] = matrix_to_json(mp.e[s]);
  out["pvm"] = pvm;
  out["u"] = matrix_to_json(mp.u);
  return out;
}

MeasuringProcess process_from_json(const Json& j) {
  expect_type(j, "measuring-process");
  MeasuringProcess mp;
  Index dim = count_field(j, "dimH");
  mp.dim_k = count_field(j, "dimK");
  mp.outcomes = outcomes_from_json(j);
  mp.algebra = algebra_from_json(j.contains("algebra") ? j["algebra"] : Json(), dim);
  mp.sigma = matrix_from_json(field(j, "sigma"));
  expect_shape(mp.sigma, mp.dim_k, mp.dim_k, "sigma");
  for (std::size_t s = 0; s < mp.outcomes.size(); ++s) {
    mp.e.push_back(matrix_from_json(labelled(field(j, "pvm"), mp.outcomes, s, "pvm")));
    expect_shape(mp.e.back(), mp.dim_k, mp.dim_k, "pointer projection");
  }
  mp.u = matrix_from_json(field(j, "u"));
  expect_shape(mp.u, dim * mp.dim_k, dim * mp.dim_k, "u");
  return mp;
}

Json system_to_json(const CorrelationSystem& sys) {
  Json out;
  out["type"] = "correlation-system";
  out["dimH"] = sys.dim();
  out["dimL"] = sys.dim_l();
  out["outcomes"] = sys.outcomes().labels();
  out["algebra"] = algebra_to_json(sys.algebra());
  out["v"] = matrix_to_json(sys.v());
  out["pi_in"] = matrices_to_json(sys.pi_in().images);
  Json atoms = Json::object();
  for (std::size_t s = 0; s < sys.outcomes().size(); ++s)
    atoms[sys.outcomes().label(s)] = matrices_to_json(sys.pi_atom(s).images);
  out["pi_atoms"] = atoms;
  return out;
}

CorrelationSystem system_from_json(const Json& j) {
  expect_type(j, "correlation-system");
  Index dim = count_field(j, "dimH");
  Index dl = count_field(j, "dimL");
  OutcomeSpace outcomes = outcomes_from_json(j);
  auto alg = algebra_from_json(j.contains("algebra") ? j["algebra"] : Json(), dim);
  auto read_rep = [&](const Json& images) {
    Representation r{alg, dl, matrices_from_json(images)};
    if (r.images.size() != alg.basis().size()) {
      schema("representation needs one image per algebra basis element (" +
             std::to_string(alg.basis().size()) + ")");
    }
    for (const auto& m : r.images) expect_shape(m, dl, dl, "representation image");
    return r;
  };
  Representation pi_in = read_rep(field(j, "pi_in"));
  std::vector<Representation> atoms;
  for (std::size_t s = 0; s < outcomes.size(); ++s)
    atoms.push_back(read_rep(labelled(field(j, "pi_atoms"), outcomes, s, "pi_atoms")));
  Matrix v = matrix_from_json(field(j, "v"));
  expect_shape(v, dl, dim, "v");
  return {alg, outcomes, std::move(pi_in), std::move(atoms), std::move(v)};
}

Json kernel_to_json(const OperatorKernel& k) {
  Json out;
  out["type"] = "kernel";
  out["dim"] = k.dim();
  out["labels"] = k.labels();
  Json entries = Json::object();
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = i; j < k.size(); ++j)
      entries[k.labels()[i] + "|" + k.labels()[j]] = matrix_to_json(k(i, j));
  out["entries"] = entries;
  return out;
}

OperatorKernel kernel_from_json(const Json& j) {
  expect_type(j, "kernel");
  Index dim = count_field(j, "dim");
  const Json& l = field(j, "labels");
  if (!l.is_array() || l.empty()) schema("\"labels\" must be a nonempty array");
  std::vector<std::string> labels;
  for (const auto& x : l) {
    if (!x.is_string()) schema("kernel labels must be strings");
    labels.push_back(x.get<std::string>());
  }
  const Json& entries = field(j, "entries");
  if (!entries.is_object()) schema("\"entries\" must be an object");
  std::vector<std::vector<Matrix>> upper(labels.size());
  for (std::size_t a = 0; a < labels.size(); ++a) {
    for (std::size_t b = a; b < labels.size(); ++b) {
      std::string key = labels[a] + "|" + labels[b];
      if (!entries.contains(key)) schema("kernel entry \"" + key + "\" is missing");
      upper[a].push_back(matrix_from_json(entries.at(key)));
      expect_shape(upper[a].back(), dim, dim, "kernel entry");
    }
  }
  try {
    return OperatorKernel::from_upper(std::move(labels), dim, upper);
  } catch (const Error& e) {
    schema(std::string("invalid kernel: ") + e.what());
  }
}

Matrix state_from_json(const Json& j) {
  if (j.is_array()) return matrix_from_json(j);
  expect_type(j, "state");
  if (j.contains("vector")) {
    Vector psi = vector_from_json(j["vector"]);
    return psi * psi.adjoint();
  }
  return matrix_from_json(field(j, "rho"));
}

Json state_to_json(const Matrix& rho) {
  Json out;
  out["type"] = "state";
  out["rho"] = matrix_to_json(rho);
  return out;
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) schema("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    schema("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace qdil::io
