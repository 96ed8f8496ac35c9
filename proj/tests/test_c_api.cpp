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
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "gemsim/gemsim.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v ? v : fallback;
}

std::string config_path(const std::string& file) {
  return env_or("GEMSIM_CONFIG_DIR", "configs") + "/" + file;
}

std::filesystem::path tmp_dir() {
  const std::filesystem::path p =
      env_or("GEMSIM_TMP", (std::filesystem::temp_directory_path() / "gemsim_c_api").string());
  std::filesystem::create_directories(p);
  return p;
}

std::string write_config(const std::string& name, const std::string& text) {
  const auto path = tmp_dir() / name;
  FILE* f = std::fopen(path.c_str(), "w");
  REQUIRE(f);
  std::fputs(text.c_str(), f);
  std::fclose(f);
  return path.string();
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(gem_version()).size() > 0);
  CHECK(std::string(gem_status_name(GEM_ERR_CONFIG)) == "configuration error");
  CHECK(std::string(gem_status_name(static_cast<gem_status>(99))) == "unknown status");
}

TEST_CASE("beta and argument errors") {
  gem_params p = gem_default_params();
  p.N = 0.3;
  double b = 0;
  REQUIRE(gem_beta(&p, &b) == GEM_OK);
  CHECK(b == doctest::Approx(0.3));

  CHECK(gem_beta(nullptr, &b) == GEM_ERR_NULL_POINTER);
  CHECK(std::string(gem_last_error()).find("params") != std::string::npos);
  p.N = -1.0;
  CHECK(gem_beta(&p, &b) == GEM_ERR_INVALID_ARGUMENT);
  CHECK(std::string(gem_last_error()).size() > 0);

  CHECK(gem_thin_limit_echo(2.0, 0, &b) == GEM_ERR_INVALID_ARGUMENT);
  CHECK(gem_single_memory_efficiency(0.2, nullptr) == GEM_ERR_NULL_POINTER);
}

TEST_CASE("closed forms") {
  double v = 0;
  const double big_r = 1.0 - std::exp(-kPi);
  REQUIRE(gem_single_memory_efficiency(0.5, &v) == GEM_OK);
  CHECK(v == doctest::Approx(big_r * big_r));
  REQUIRE(gem_multiswitch_echo(0.5, 2, &v) == GEM_OK);
  CHECK(v == doctest::Approx(big_r * big_r * std::exp(-kPi)));
  REQUIRE(gem_finite_cell_echo(0.5, 1, 2, &v) == GEM_OK);
  CHECK(v == doctest::Approx(big_r * big_r * std::exp(-kPi)));
  REQUIRE(gem_transverse_efficiency(0.5, 1, &v) == GEM_OK);
  CHECK(v == doctest::Approx(big_r * big_r));
  REQUIRE(gem_thin_limit_echo(2.0, 1, &v) == GEM_OK);
  CHECK(v == doctest::Approx(4.0 * std::exp(-2.0)));
  double re = 0, im = 0;
  REQUIRE(gem_gamma_imag(1.0, &re, &im) == GEM_OK);
  CHECK(re * re + im * im == doctest::Approx(kPi / std::sinh(kPi)));
}

TEST_CASE("path sum and budget") {
  double e = 0, closed = 0;
  uint64_t paths = 0;
  REQUIRE(gem_path_sum(3, 3, 0.2, GEM_PHASE_SYMMETRIC, 2, 1000000, &e, &paths) == GEM_OK);
  REQUIRE(gem_finite_cell_echo(0.2, 3, 2, &closed) == GEM_OK);
  CHECK(e == doctest::Approx(closed).epsilon(1e-12));
  CHECK(paths > 0);
  REQUIRE(gem_path_sum(3, 3, 0.2, GEM_PHASE_REAL, 2, 1000000, &e, nullptr) == GEM_OK);
  CHECK(e == doctest::Approx(closed).epsilon(1e-12));
  CHECK(gem_path_sum(30, 12, 0.2, GEM_PHASE_SYMMETRIC, 12, 10, &e, &paths) ==
        GEM_ERR_BUDGET_EXCEEDED);
  CHECK(std::string(gem_last_error()).size() > 0);
}

TEST_CASE("pulses and an empty-medium simulation") {
  gem_pulse* pulse = nullptr;
  REQUIRE(gem_pulse_gaussian(-6.0, 1.0, 1.0, 0.0, &pulse) == GEM_OK);
  double re = 0, im = 0, energy = 0;
  REQUIRE(gem_pulse_eval(pulse, -6.0, &re, &im) == GEM_OK);
  CHECK(re == doctest::Approx(1.0));
  CHECK(im == 0.0);
  REQUIRE(gem_pulse_energy(pulse, &energy) == GEM_OK);
  CHECK(energy == doctest::Approx(std::sqrt(kPi)).epsilon(1e-8));

  gem_params p = gem_default_params();
  const gem_grid grid{41, 15001, -12.0, 12.0};
  const double flip = 0.0;
  gem_result* result = nullptr;
  REQUIRE(gem_simulate(&p, &grid, pulse, &flip, 1, nullptr, &result) == GEM_OK);

  size_t n = 0;
  REQUIRE(gem_result_length(result, &n) == GEM_OK);
  REQUIRE(n == 15001);
  std::vector<double> t(n), out_re(n), out_im(n);
  REQUIRE(gem_result_output(result, t.data(), out_re.data(), out_im.data(), n) == GEM_OK);
  double worst = 0;
  for (size_t i = 0; i < n; ++i) {
    double a = 0;
    gem_pulse_eval(pulse, t[i], &a, nullptr);
    worst = std::max(worst, std::hypot(out_re[i] - a, out_im[i]));
  }
  CHECK(worst <= 1e-12);

  double in = 0, transmitted = 0, residual = 0;
  REQUIRE(gem_result_energies(result, &in, &transmitted, &residual) == GEM_OK);
  CHECK(transmitted == doctest::Approx(in));
  CHECK(residual == 0.0);
  size_t echoes = 0;
  REQUIRE(gem_result_echo_count(result, &echoes) == GEM_OK);
  double e = 0;
  CHECK(gem_result_echo_energy(result, echoes + 1, &e) == GEM_ERR_OUT_OF_RANGE);

  CHECK(gem_simulate(&p, &grid, pulse, nullptr, 2, nullptr, &result) == GEM_ERR_NULL_POINTER);
  gem_result_free(result);
  gem_pulse_free(pulse);
  gem_result_free(nullptr);
  gem_pulse_free(nullptr);
}

TEST_CASE("run_command") {
  const std::string out = (tmp_dir() / "fig4").string();
  int code = -1;
  CHECK(gem_run_command("fig4", config_path("fig4.ini").c_str(), out.c_str(), &code) == GEM_OK);
  CHECK(code == 0);
  CHECK(std::filesystem::exists(std::filesystem::path(out) / "fig4.csv"));
  CHECK(std::filesystem::exists(std::filesystem::path(out) / "summary.txt"));

  const auto bad = write_config("bad.ini", "[sweep]\nbeta_maximum = 3\n");
  CHECK(gem_run_command("fig4", bad.c_str(), out.c_str(), &code) == GEM_ERR_CONFIG);
  CHECK(code == 2);
  CHECK(std::string(gem_last_error()).find("sweep.beta_maximum") != std::string::npos);

  CHECK(gem_run_command("bogus", config_path("fig4.ini").c_str(), out.c_str(), &code) ==
        GEM_ERR_CONFIG);
  CHECK(code == 2);
  CHECK(gem_run_command("fig5", config_path("fig4.ini").c_str(), out.c_str(), &code) ==
        GEM_ERR_CONFIG);
  CHECK(code == 2);
  CHECK(gem_run_command("simulate", config_path("fig4.ini").c_str(), out.c_str(), &code) ==
        GEM_ERR_CONFIG);
  CHECK(gem_run_command("fig4", "/nonexistent.ini", out.c_str(), &code) == GEM_ERR_CONFIG);
  CHECK(code == 2);

  const auto strict = write_config("strict.ini",
                                   "[scenario]\nname = fig5\n[thresholds]\ncumulative_min = 0.99\n");
  CHECK(gem_run_command("fig5", strict.c_str(), out.c_str(), &code) == GEM_OK);
  CHECK(code == 1);
  CHECK(gem_run_command(nullptr, strict.c_str(), out.c_str(), &code) == GEM_ERR_NULL_POINTER);
}
