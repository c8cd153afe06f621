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

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "qdil/io.hpp"
#include "qdil/vn_model.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using qdil::io::Json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
  Json report() const { return Json::parse(out); }
  Json error() const { return Json::parse(err.substr(0, err.find('\n'))); }
};

Outcome run_cli(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"qdil"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : owned) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = qdil::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string fixture_path(const std::string& file) {
  return (fs::path(QDIL_FIXTURES_DIR) / file).string();
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "qdil-cli-tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string write_json(const std::string& name, const Json& j) {
  fs::path p = scratch(name);
  std::ofstream(p) << j.dump();
  return p.string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("dilate round-trips every fixture") {
    for (const auto& f : qdil::fixtures()) {
      auto o = run_cli({"dilate", "-i", fixture_path(f.name + ".json")});
      CHECK_MESSAGE(o.code == 0, f.name, o.err);
      auto r = o.report();
      CHECK(r["command"] == "dilate");
      CHECK(r["exit_code"] == 0);
      CHECK(r["round_trip_residual"].get<double>() <= 1e-9);
    }
  }

  TEST_CASE("dilate writes a process that equiv accepts") {
    auto a = scratch("a.json").string();
    auto b = scratch("b.json").string();
    auto c = scratch("c.json").string();
    std::string in = fixture_path("trine.json");
    REQUIRE(run_cli({"dilate", "-i", in, "-o", a}).code == 0);
    REQUIRE(run_cli({"dilate", "-i", in, "-o", b, "--completion-seed", "5"}).code == 0);
    REQUIRE(run_cli({"dilate", "-i", in, "-o", c, "--anchor", "2"}).code == 0);
    auto twisted = testing_support::twist_off_support(
        qdil::io::process_from_json(qdil::io::read_file(c)), 3);
    qdil::io::write_file(c, qdil::io::process_to_json(twisted));
    auto same = run_cli({"equiv", a, b, "--order", "3"});
    CHECK(same.code == 0);
    CHECK(same.report()["equivalent"] == true);
    auto differ = run_cli({"equiv", a, c, "--order", "3"});
    CHECK(differ.code == 1);
    auto orders = differ.report()["orders"];
    CHECK(orders[1]["equivalent"] == true);
    CHECK(orders[1]["label"] == "statistical equivalence");
    CHECK(orders[2]["equivalent"] == false);
  }

  TEST_CASE("extend and verify-mc") {
    auto sys = scratch("sys.json").string();
    auto o = run_cli({"extend", "-i", fixture_path("amp-damp-0.5.json"), "-o", sys});
    CHECK(o.code == 0);
    CHECK(o.report()["anchor"] == "no-jump");
    auto v = run_cli({"verify-mc", "-i", sys, "--depth", "3", "--samples", "60"});
    CHECK(v.code == 0);
    CHECK(v.report()["all_passed"] == true);
    CHECK(v.report()["axioms"].size() == 7);
  }

  TEST_CASE("inner and faithful") {
    auto ok = run_cli({"inner", "-i", fixture_path("restricted-luders-z.json")});
    CHECK(ok.code == 0);
    CHECK(ok.report()["inner"] == true);
    auto leak = run_cli({"inner", "-i", fixture_path("restricted-unitary-hadamard.json")});
    CHECK(leak.code == 2);
    CHECK(leak.error()["error"] == "kraus-outside-algebra");
    auto f = run_cli({"faithful", "-i", fixture_path("restricted-unitary-hadamard.json")});
    CHECK(f.code == 0);
    CHECK(f.report()["faithful"] == true);
  }

  TEST_CASE("sampling is deterministic in the seed") {
    Json rho = Json::array({Json::array({Json::array({0.5, 0.0}), Json::array({0.5, 0.0})}),
                            Json::array({Json::array({0.5, 0.0}), Json::array({0.5, 0.0})})});
    auto state = write_json("plus.json", rho);
    auto in = fixture_path("luders-z.json");
    auto a = run_cli({"sample", "-i", in, "--state", state, "--steps", "400", "--seed", "9"});
    auto b = run_cli({"sample", "-i", in, "--state", state, "--steps", "400", "--seed", "9"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.report()["all_within_3_sigma"] == true);
    auto zero = run_cli({"sample", "-i", in, "--state", state, "--steps", "0"});
    CHECK(zero.code == 2);
    CHECK(zero.error()["error"] == "invalid-argument");
  }

  TEST_CASE("vn-model") {
    auto o = run_cli({"vn-model", "--meter-dim", "4"});
    CHECK(o.code == 0);
    CHECK(o.report()["distance_to_luders"].get<double>() < 1e-10);
    auto wide = run_cli({"vn-model", "--meter-dim", "4", "--pointer-width", "1.0"});
    CHECK(wide.report()["distance_to_luders"].get<double>() > 1e-3);
  }

  TEST_CASE("input errors exit with code 2") {
    auto bad = write_json("bad.json", Json{{"type", "instrument"}, {"dimH", 2}});
    auto o = run_cli({"dilate", "-i", bad});
    CHECK(o.code == 2);
    CHECK(o.error()["error"] == "schema");
    CHECK(run_cli({"dilate", "-i", scratch("missing.json").string()}).error()["error"] ==
          "schema");

    // transpose map: positive on states, not completely positive
    Json choi = Json::array();
    for (int r = 0; r < 4; ++r) {
      Json row = Json::array();
      for (int c = 0; c < 4; ++c) {
        // Σ_ij E_ij ⊗ E_ji is the swap
        bool one = (r == 0 && c == 0) || (r == 3 && c == 3) || (r == 1 && c == 2) ||
                   (r == 2 && c == 1);
        row.push_back(Json::array({one ? 1.0 : 0.0, 0.0}));
      }
      choi.push_back(row);
    }
    auto transpose = write_json("transpose.json", Json{{"type", "instrument-choi"},
                                                       {"dim", 2},
                                                       {"outcomes", {"1"}},
                                                       {"choi", {{"1", choi}}}});
    auto t = run_cli({"dilate", "-i", transpose});
    CHECK(t.code == 2);
    CHECK(t.error()["error"] == "choi-negative");

    auto anchor = run_cli({"dilate", "-i", fixture_path("luders-z.json"), "--anchor", "7"});
    CHECK(anchor.code == 2);
    CHECK(anchor.error()["error"] == "unknown-label");

    CHECK(run_cli({"no-such-command"}).code == 2);
    CHECK(run_cli({"equiv", fixture_path("luders-z.json")}).code == 2);
  }

  TEST_CASE("exported fixtures match the repository copies") {
    auto dir = scratch("export");
    auto o = run_cli({"fixtures", "-o", dir.string()});
    REQUIRE(o.code == 0);
    for (const auto& entry : fs::directory_iterator(dir)) {
      auto name = entry.path().filename().string();
      auto fresh = qdil::io::read_file(entry.path());
      auto stored = qdil::io::read_file(fixture_path(name));
      auto a = qdil::io::instrument_from_json(fresh);
      auto b = qdil::io::instrument_from_json(stored);
      CHECK_MESSAGE(qdil::instrument_distance(a, b) < 1e-12, name);
      CHECK(fresh["source"] == stored["source"]);
    }
    CHECK(run_cli({"fixtures", "--name", "nope"}).code == 2);
  }
}
