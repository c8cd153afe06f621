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

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qdil/correlations.hpp"
#include "qdil/dilation.hpp"
#include "qdil/error.hpp"
#include "qdil/io.hpp"
#include "qdil/measuring_process.hpp"
#include "qdil/vn_model.hpp"

namespace qdil::cli {

namespace {

using io::Json;

struct RunConfig {
  Tolerance tol;
  std::uint64_t seed = 1;
  std::size_t depth = 3;
  std::size_t samples = 200;
  std::size_t order = 3;
  std::size_t steps = 1000;
  std::string output;
  std::vector<std::string> inputs;
  std::string state;
  std::string anchor;
  std::optional<std::uint64_t> completion_seed;
  // vn-model
  Index meter_dim = 8;
  std::optional<double> coupling;
  double pointer_width = 0.0;
  std::string observable;
  std::string name;
};

Json config_json(const RunConfig& c) {
  Json j;
  j["tol"] = c.tol.abs;
  j["psd_slack"] = c.tol.psd_slack;
  j["seed"] = c.seed;
  j["depth"] = c.depth;
  j["samples"] = c.samples;
  j["order"] = c.order;
  j["steps"] = c.steps;
  j["inputs"] = c.inputs;
  j["output"] = c.output;
  return j;
}

const std::string& single_input(const RunConfig& c) {
  if (c.inputs.size() != 1) {
    throw Error(ErrorKind::InvalidArgument, "exactly one --input file expected");
  }
  return c.inputs.front();
}

void maybe_write(const RunConfig& c, const Json& artifact) {
  if (!c.output.empty()) io::write_file(c.output, artifact);
}

double process_round_trip(const MeasuringProcess& mp, const CPInstrument& inst,
                          const Tolerance& tol) {
  return instrument_distance(induced_instrument_mp(mp, tol), inst);
}

Json residuals_json(const std::map<std::string, double>& r) {
  Json j = Json::object();
  for (const auto& [k, v] : r) j[k] = v;
  return j;
}

int cmd_dilate(const RunConfig& c, Json& report) {
  auto inst = io::instrument_from_json(io::read_file(single_input(c)), c.tol);
  inst.validate(c.tol);
  std::optional<std::string> anchor;
  if (!c.anchor.empty()) anchor = c.anchor;
  auto sys = from_instrument(inst, anchor, c.tol);
  auto built = mp_from_correlations(sys, {c.completion_seed}, c.tol);
  double rt = process_round_trip(built.mp, inst, c.tol);
  report["dimH"] = inst.dim();
  report["dimL"] = sys.dim_l();
  report["dimK"] = built.mp.dim_k;
  report["round_trip_residual"] = rt;
  report["residuals"] = residuals_json(built.residuals);
  report["notes"] = built.notes;
  maybe_write(c, io::process_to_json(built.mp));
  return rt <= c.tol.abs ? kSuccess : kVerificationFailed;
}

int cmd_extend(const RunConfig& c, Json& report) {
  auto inst = io::instrument_from_json(io::read_file(single_input(c)), c.tol);
  inst.validate(c.tol);
  std::optional<std::string> anchor;
  if (!c.anchor.empty()) anchor = c.anchor;
  auto sys = from_instrument(inst, anchor, c.tol);
  auto inv = sys.check_invariants();
  double rt = instrument_distance(induced_instrument(sys, c.tol), inst);
  report["dimH"] = inst.dim();
  report["dimL"] = sys.dim_l();
  report["anchor"] = anchor.value_or(inst.outcomes().label(0));
  report["invariants"] = {{"representation", inv.representation},
                          {"pvm", inv.pvm},
                          {"intertwining", inv.intertwining},
                          {"closure", inv.closure}};
  report["round_trip_residual"] = rt;
  maybe_write(c, io::system_to_json(sys));
  return inv.ok(c.tol.abs) && rt <= c.tol.abs ? kSuccess : kVerificationFailed;
}

int cmd_verify_mc(const RunConfig& c, Json& report) {
  auto sys = io::system_from_json(io::read_file(single_input(c)));
  auto model = sys.model();
  auto rep = verify_axioms(*model, c.depth, c.samples, c.seed, c.tol);
  Json axioms = Json::array();
  for (const auto& r : rep.results)
    axioms.push_back({{"axiom", r.name}, {"passed", r.passed}, {"residual", r.residual},
                      {"note", r.note}});
  report["axioms"] = axioms;
  report["all_passed"] = rep.all_passed();
  return rep.all_passed() ? kSuccess : kVerificationFailed;
}

int cmd_equiv(const RunConfig& c, Json& report) {
  if (c.inputs.size() != 2) {
    throw Error(ErrorKind::InvalidArgument, "equiv needs exactly two measuring-process files");
  }
  auto a = io::process_from_json(io::read_file(c.inputs[0]));
  auto b = io::process_from_json(io::read_file(c.inputs[1]));
  a.validate(c.tol);
  b.validate(c.tol);
  auto rep = n_equivalent(*a.model(c.tol), *b.model(c.tol), c.order, c.tol);
  Json orders = Json::array();
  for (const auto& o : rep.orders)
    orders.push_back({{"order", o.order}, {"equivalent", o.equivalent},
                      {"residual", o.residual}, {"label", o.label}});
  report["orders"] = orders;
  report["equivalent"] = rep.equivalent();
  return rep.equivalent() ? kSuccess : kVerificationFailed;
}

int cmd_inner(const RunConfig& c, Json& report) {
  auto inst = io::instrument_from_json(io::read_file(single_input(c)), c.tol);
  inst.validate(c.tol);
  MpConstruction built;
  try {
    built = inner_mp_from_kraus(inst, c.tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OutsideAlgebra) throw;
    report["error"] = "kraus-outside-algebra";
    report["message"] = e.what();
    report["witness"] = e.witness();
    report["hint"] = "use `qdil faithful` for instruments whose Kraus operators leave the algebra";
    return kInputError;
  }
  double rt = process_round_trip(built.mp, inst, c.tol);
  double inner = built.residuals.at("u.inner");
  report["dimK"] = built.mp.dim_k;
  report["inner"] = inner <= c.tol.abs;
  report["inner_residual"] = inner;
  report["round_trip_residual"] = rt;
  report["residuals"] = residuals_json(built.residuals);
  report["notes"] = built.notes;
  maybe_write(c, io::process_to_json(built.mp));
  return inner <= c.tol.abs && rt <= c.tol.abs ? kSuccess : kVerificationFailed;
}

int cmd_faithful(const RunConfig& c, Json& report) {
  auto inst = io::instrument_from_json(io::read_file(single_input(c)), c.tol);
  auto res = faithful_mp(inst, 1, c.tol);
  const auto& mp = res.construction.mp;
  auto induced = induced_instrument_mp(mp, c.tol);
  double rt = instrument_distance(induced, inst);
  Index n = inst.dim();
  Matrix one = Matrix::Identity(n, n);
  double effect = 0.0;
  Json table = Json::array();
  for (std::size_t s = 0; s < inst.outcomes().size(); ++s) {
    double e = max_abs(induced.apply_dual_atom(one, s) - inst.apply_dual_atom(one, s));
    effect = std::max(effect, e);
    table.push_back({{"outcome", inst.outcomes().label(s)},
                     {"null", static_cast<bool>(res.null_atoms[s])},
                     {"pointer_rank", res.pointer_ranks[s]},
                     {"effect_residual", e}});
  }
  report["dimK"] = mp.dim_k;
  report["faithful"] = res.faithful;
  report["atoms"] = table;
  report["effect_residual"] = effect;
  report["round_trip_residual"] = rt;
  report["residuals"] = residuals_json(res.construction.residuals);
  report["notes"] = res.construction.notes;
  maybe_write(c, io::process_to_json(mp));
  return res.faithful && rt <= c.tol.abs ? kSuccess : kVerificationFailed;
}

int cmd_sample(const RunConfig& c, Json& report) {
  if (c.steps == 0) throw Error(ErrorKind::InvalidArgument, "--steps must be positive");
  if (c.state.empty()) throw Error(ErrorKind::InvalidArgument, "--state is required");
  auto inst = io::instrument_from_json(io::read_file(single_input(c)), c.tol);
  inst.validate(c.tol);
  Matrix rho = io::state_from_json(io::read_file(c.state));
  require_state(rho, c.tol);
  auto traj = inst.sample_trajectory(rho, c.steps, c.seed, c.tol);
  auto counts = inst.sample_counts(rho, c.steps, c.seed, c.tol);
  Json table = Json::array();
  bool all_within = true;
  double shots = static_cast<double>(c.steps);
  for (std::size_t s = 0; s < inst.outcomes().size(); ++s) {
    double p = inst.outcome_probability(rho, inst.outcomes().atom(s), c.tol);
    double freq = static_cast<double>(counts[s]) / shots;
    double sigma = std::sqrt(p * (1.0 - p) / shots);
    bool within = std::abs(freq - p) <= 3.0 * sigma + 1e-12;
    all_within = all_within && within;
    table.push_back({{"outcome", inst.outcomes().label(s)}, {"exact", p},
                     {"empirical", freq}, {"sigma", sigma}, {"within_3_sigma", within}});
  }
  report["first_step_table"] = table;
  report["all_within_3_sigma"] = all_within;
  Json outcomes = Json::array();
  for (const auto& step : traj) outcomes.push_back(inst.outcomes().label(step.atom));
  Json artifact;
  artifact["type"] = "trajectory";
  artifact["seed"] = c.seed;
  artifact["outcomes"] = outcomes;
  artifact["final_state"] = io::matrix_to_json(traj.empty() ? rho : traj.back().state);
  artifact["first_step_table"] = table;
  maybe_write(c, artifact);
  return all_within ? kSuccess : kVerificationFailed;
}

int cmd_vn_model(const RunConfig& c, Json& report) {
  Matrix a;
  if (c.observable.empty()) {
    a = Matrix::Zero(2, 2);
    a(1, 1) = 1.0;
  } else {
    a = io::matrix_from_json(io::read_file(c.observable));
  }
  DiscreteVNModel model;
  model.observable = a;
  model.meter_dim = c.meter_dim;
  model.coupling = c.coupling.value_or(2.0 * std::numbers::pi / static_cast<double>(c.meter_dim));
  if (c.pointer_width > 0.0) {
    model.pointer_state = gaussian_pointer(c.meter_dim, c.pointer_width);
  } else {
    model.pointer_state = Vector::Zero(c.meter_dim);
    model.pointer_state(0) = 1.0;
  }
  auto mp = model.build(c.tol);
  auto induced = induced_instrument_mp(mp, c.tol);
  report["dimH"] = a.rows();
  report["meter_dim"] = c.meter_dim;
  report["coupling"] = model.coupling;
  try {
    report["distance_to_luders"] =
        instrument_distance(induced, modular_luders(a, c.meter_dim, c.tol));
  } catch (const Error&) {
    report["distance_to_luders"] = nullptr;  // non-integer spectrum
  }
  report["note"] = "P is the DFT conjugate of Q; [Q, P] = i cannot hold in finite dimension";
  maybe_write(c, io::process_to_json(mp));
  return kSuccess;
}

int cmd_fixtures(const RunConfig& c, Json& report) {
  auto all = fixtures();
  auto restricted = restricted_fixtures();
  all.insert(all.end(), restricted.begin(), restricted.end());
  Json list = Json::array();
  for (const auto& f : all) {
    if (!c.name.empty() && f.name != c.name) continue;
    auto cp = f.instrument.verify_cp(c.tol);
    list.push_back({{"name", f.name}, {"description", f.description},
                    {"source", f.source}, {"dimH", f.instrument.dim()},
                    {"cp", cp.cp}, {"complete", cp.complete}});
    if (!c.output.empty()) {
      std::filesystem::path dir(c.output);
      std::filesystem::create_directories(dir);
      Json j = io::instrument_to_json(f.instrument);
      j["name"] = f.name;
      j["description"] = f.description;
      j["source"] = f.source;
      std::string file = f.name;
      std::replace(file.begin(), file.end(), '/', '-');
      io::write_file(dir / (file + ".json"), j);
    }
  }
  if (list.empty()) throw Error(ErrorKind::UnknownLabel, "no fixture named " + c.name);
  report["fixtures"] = list;
  return kSuccess;
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& message,
                std::optional<double> witness = {}) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  if (witness) j["witness"] = *witness;
  err << j.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qdil: instruments, measuring processes and measurement correlations"};
  app.require_subcommand(1);
  RunConfig c;
  if (const char* env = std::getenv("QDIL_TOL")) {
    try {
      c.tol.abs = std::stod(env);
    } catch (const std::exception&) {
      emit_error(err, "invalid-argument", "QDIL_TOL is not a number");
      return kInputError;
    }
  }

  auto common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", c.inputs, "Input JSON file(s)");
    sub->add_option("-o,--output", c.output, "Output JSON file");
    sub->add_option("--tol", c.tol.abs, "Operator-norm tolerance");
    sub->add_option("--seed", c.seed, "Random seed");
  };
  using Handler = int (*)(const RunConfig&, Json&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const std::string& name, const std::string& help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    commands.emplace_back(sub, h);
    return sub;
  };

  auto* dilate = add("dilate", "Instrument → correlation system → measuring process", cmd_dilate);
  dilate->add_option("--anchor", c.anchor, "Outcome carrying the system summand");
  dilate->add_option("--completion-seed", c.completion_seed,
                     "Twist the orthocomplement completion by a seeded unitary");
  auto* extend = add("extend", "Instrument → system of measurement correlations", cmd_extend);
  extend->add_option("--anchor", c.anchor, "Outcome carrying the system summand");
  auto* verify = add("verify-mc", "Check the correlation axioms", cmd_verify_mc);
  verify->add_option("--depth", c.depth, "Longest word length")->check(CLI::PositiveNumber);
  verify->add_option("--samples", c.samples, "Words in the positivity Gram");
  auto* equiv = add("equiv", "Compare two measuring processes order by order", cmd_equiv);
  equiv->add_option("files", c.inputs, "Two measuring-process files");
  equiv->add_option("--order", c.order, "Highest order to compare")->check(CLI::PositiveNumber);
  add("inner", "Inner measuring process from Kraus operators in the algebra", cmd_inner);
  add("faithful", "Measuring process with a faithful pointer", cmd_faithful);
  auto* sample = add("sample", "Sample outcomes and a trajectory", cmd_sample);
  sample->add_option("--state", c.state, "Density-matrix file");
  sample->add_option("--steps", c.steps, "Shots / trajectory length");
  auto* vn = add("vn-model", "Discrete von Neumann measuring process", cmd_vn_model);
  vn->add_option("--meter-dim", c.meter_dim, "Meter dimension d")->check(CLI::PositiveNumber);
  vn->add_option("--coupling", c.coupling, "Coupling λ (default 2π/d)");
  vn->add_option("--pointer-width", c.pointer_width, "Gaussian pointer width (default: sharp)");
  vn->add_option("--observable", c.observable, "Matrix file for A (default diag(0, 1))");
  auto* fx = add("fixtures", "List or export the fixture catalog", cmd_fixtures);
  fx->add_option("--name", c.name, "Single fixture");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "invalid-argument", e.what());
    return kInputError;
  }

  for (auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    Json report;
    report["command"] = sub->get_name();
    report["config"] = config_json(c);
    try {
      c.tol.validate();
      int code = handler(c, report);
      if (report.contains("error")) {
        err << Json({{"error", report["error"]}, {"message", report["message"]},
                     {"witness", report["witness"]}, {"hint", report["hint"]}})
                   .dump()
            << '\n';
      }
      report["exit_code"] = code;
      out << report.dump(2) << '\n';
      return code;
    } catch (const Error& e) {
      emit_error(err, error_kind_name(e.kind()), e.what(), e.witness());
      return kInputError;
    } catch (const std::exception& e) {
      emit_error(err, "invalid-argument", e.what());
      return kInputError;
    }
  }
  return kInputError;
}

}  // namespace qdil::cli
