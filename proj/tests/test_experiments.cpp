// Copyright 2026 The gemsim Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "gemsim/error.hpp"
#include "gemsim/experiments.hpp"

using namespace gem;

namespace {

std::string error_of(const std::function<void()>& f, ErrorCode* code = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (code) *code = e.code();
    return e.what();
  }
  return {};
}

double quantity(const ScenarioOutcome& o, const std::string& name) {
  for (const auto& [k, v] : o.quantities)
    if (k == name) return v;
  FAIL("missing quantity " << name);
  return NAN;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config(
      "# comment\n[scenario]\nname = single-echo\n\n[physics]\nbeta = 0.25  ; trailing\n"
      "eta = 2\n[grid]\nnz = 801\n[flips]\ntimes = 0, 12.5\n[sweep]\nechoes = 7\n"
      "echo_counts = 1, 5\n[network]\nphase = real\n[thresholds]\nefficiency_min = 0.5\n");
  CHECK(c.scenario == "single-echo");
  CHECK(beta(c.physics) == doctest::Approx(0.25));
  CHECK(c.physics.N == doctest::Approx(0.5));
  CHECK(c.grid.nz == 801);
  CHECK(c.flips == std::vector<double>{0.0, 12.5});
  CHECK(c.sweep.echoes == 7);
  CHECK(c.sweep.echo_counts == std::vector<int>{1, 5});
  CHECK(c.network.phase == ReflectionPhase::kRealAntisymmetric);
  CHECK(c.thresholds.efficiency_min.value() == 0.5);
  CHECK(c.entries.size() == 9);
}

TEST_CASE("config errors name the offending key") {
  ErrorCode code{};
  CHECK(error_of([] { parse_config("[physics]\nbetta = 1\n"); }, &code).find("physics.betta") !=
        std::string::npos);
  CHECK(code == ErrorCode::kConfig);
  CHECK(error_of([] { parse_config("[physic]\n"); }).find("[physic]") != std::string::npos);
  CHECK(error_of([] { parse_config("[grid]\nnz = 10\nnz = 20\n"); }).find("duplicate") !=
        std::string::npos);
  CHECK(error_of([] { parse_config("[grid]\nnz = ten\n"); }).find("grid.nz") != std::string::npos);
  CHECK(error_of([] { parse_config("[grid]\nnz = 1\n"); }).find("grid.nz") != std::string::npos);
  CHECK(error_of([] { parse_config("nz = 1\n"); }).find("outside any section") != std::string::npos);
  CHECK(error_of([] { parse_config("[physics]\nN = 1\nbeta = 1\n"); }).find("not both") !=
        std::string::npos);
  CHECK(error_of([] { parse_config("[physics]\neta = -1\nbeta = 1\n"); }).find("sign") !=
        std::string::npos);
  CHECK(error_of([] { parse_config("[pulse]\nshape = square\n"); }).find("pulse.shape") !=
        std::string::npos);
  CHECK(error_of([] { load_config("/nonexistent/x.ini"); }, &code).find("cannot read") !=
        std::string::npos);
}

TEST_CASE("shipped configs parse and documentation covers every key") {
  int n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(GEMSIM_CONFIG_DIR)) {
    if (entry.path().extension() != ".ini") continue;
    CHECK_NOTHROW(load_config(entry.path().string()));
    ++n;
  }
  CHECK(n == 11);
  const std::string docs = read_file(GEMSIM_DOCS_CONFIG);
  for (const auto& key : known_config_keys()) {
    const std::string bare = key.substr(key.find('.') + 1);
    INFO(key);
    CHECK(docs.find("`" + bare + "`") != std::string::npos);
  }
  for (const auto& name : scenario_names()) {
    INFO(name);
    CHECK(docs.find("name = " + name) != std::string::npos);
  }
}

TEST_CASE("csv formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(NAN) == "nan");
  CsvTable t({"a", "b"});
  t.add_provenance("source x");
  t.add_row({1.0, 2.5});
  CHECK_THROWS_AS(t.add_row({1.0}), Error);
  CHECK(t.to_string() == "# source x\na,b\n1,2.5\n");
  CHECK(t.column("b") == std::vector<double>{2.5});
}

TEST_CASE("svg plot") {
  LinePlot p{"title <x>", "x", "y", {{"one", {0, 1, 2}, {0, 1, 4}}, {"two", {0, 2}, {1, NAN}}}};
  const std::string svg = p.to_svg();
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("title &lt;x&gt;") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find(">two</text>") != std::string::npos);
  CHECK(svg == p.to_svg());
}

TEST_CASE("unknown scenario lists the valid names") {
  ScenarioConfig c;
  c.scenario = "nope";
  ErrorCode code{};
  const std::string msg = error_of([&] { run_scenario(c); }, &code);
  CHECK(code == ErrorCode::kConfig);
  for (const auto& n : scenario_names()) CHECK(msg.find(n) != std::string::npos);
}

TEST_CASE("fig4 reproduction") {
  ScenarioConfig c;
  c.scenario = "fig4";
  const auto o = run_scenario(c);
  CHECK(o.all_pass());
  const auto& t = o.table("fig4.csv");
  CHECK(t.rows().size() == 121);
  CHECK(t.headers().size() == 1 + 5 + 2);
  const auto beta = t.column("beta"), trans = t.column("transmitted");
  for (std::size_t i = 0; i < beta.size(); ++i) CHECK(trans[i] == std::exp(-2.0 * kPi * beta[i]));
  CHECK(quantity(o, "e_1[2]") == doctest::Approx(0.999993).epsilon(1e-6));
}

TEST_CASE("fig5 reproduction") {
  ScenarioConfig c;
  c.scenario = "fig5";
  const auto o = run_scenario(c);
  CHECK(o.all_pass());
  CHECK(quantity(o, "e_1_max") == doctest::Approx(4.0 * std::exp(-2.0)).epsilon(1e-12));
  CHECK(quantity(o, "e_1_argmax_d") == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(quantity(o, "cumulative_max_P100") > 0.92);
  CHECK(quantity(o, "optimal_d_P100") == doctest::Approx(4.84).epsilon(1e-2));
  CHECK(o.table("fig5_P100.csv").headers().size() == 102);

  // thresholds come from the configuration
  c.thresholds.cumulative_min = 0.95;
  CHECK_FALSE(run_scenario(c).all_pass());
}

TEST_CASE("series memories") {
  ScenarioConfig c;
  c.scenario = "series";
  c.physics.N = 2.0;
  c.series.eta2 = -1.0;
  auto o = run_scenario(c);
  CHECK(o.all_pass());
  CHECK(quantity(o, "residual_excursion") <= 1e-6);

  c.series.eta2 = 1.0;
  o = run_scenario(c);
  CHECK(o.all_pass());
  CHECK(quantity(o, "residual_excursion") == doctest::Approx(4.0 * 2.0 * std::log(2.0)).epsilon(1e-9));

  c.physics.N = 0.0;
  o = run_scenario(c);
  CHECK(quantity(o, "residual_excursion") == 0.0);
}

TEST_CASE("network scenario") {
  ScenarioConfig c;
  c.scenario = "network";
  c.network.cells = 4;
  c.network.flips = 3;
  const auto o = run_scenario(c);
  CHECK(o.all_pass());
  CHECK(o.table("network.csv").rows().size() == 3);
}

TEST_CASE("fitted order") {
  std::vector<double> h{0.4, 0.2, 0.1}, e;
  for (double x : h) e.push_back(3.0 * x * x);
  CHECK(fitted_order(h, e) == doctest::Approx(2.0));
  CHECK(std::isnan(fitted_order({0.1}, {1.0})));
}

TEST_CASE("vacuum sweeps") {
  ScenarioConfig c;
  c.scenario = "convergence";
  c.sweep.nz_base = 41;
  c.pulse.width = 1.0;
  c.physics.N = 0.0;
  const auto o = run_scenario(c);
  CHECK(o.all_pass());
  for (double e : o.table("convergence.csv").column("error")) CHECK(e <= 1e-10);

  c.scenario = "vacuum";
  c.grid.nz = 41;
  CHECK(run_scenario(c).all_pass());
  c.physics.N = 1.0;
  ErrorCode code{};
  error_of([&] { run_scenario(c); }, &code);
  CHECK(code == ErrorCode::kConfig);
}

TEST_CASE("outputs are bitwise reproducible") {
  ScenarioConfig c = parse_config("[scenario]\nname = fig5\n[sweep]\nd_points = 121\n");
  const auto dir = std::filesystem::temp_directory_path() / "gemsim_repro";
  std::filesystem::remove_all(dir);
  write_outcome(run_scenario(c), c, (dir / "a").string());
  write_outcome(run_scenario(c), c, (dir / "b").string());
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir / "a")) {
    const auto other = dir / "b" / entry.path().filename();
    CHECK(read_file(entry.path()) == read_file(other));
    ++files;
  }
  CHECK(files == 6);  // fig5.csv, three per-P tables, fig5.svg, summary.txt
  const std::string csv = read_file(dir / "a" / "fig5.csv");
  CHECK(csv.rfind("# gemsim ", 0) == 0);
  CHECK(csv.find("# sweep.d_points = 121") != std::string::npos);
  std::filesystem::remove_all(dir);
}
