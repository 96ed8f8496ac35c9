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
#include <functional>
#include <random>

#include "gemsim/bs_network.hpp"
#include "gemsim/core_model.hpp"
#include "gemsim/error.hpp"

using namespace gem;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

// Direct alternating sum in long double, the reference for the recurrence branch.
// e_p(d) evaluated with 50-digit arithmetic.
struct ThinEcho {
  double d;
  int p;
  double energy;
};
constexpr ThinEcho kThinEchoes[] = {
    {0.5, 1, 0.15163266492815836},
    {0.5, 2, 0.085293374022089075},
    {0.5, 5, 0.0079995855869935887},
    {0.5, 10, 0.0024491589913147679},
    {0.5, 20, 0.0010369379785495227},
    {0.5, 21, 0.00061913453065526307},
    {0.5, 40, 0.00079456544317312948},
    {0.5, 100, 0.00011924443421059745},
    {3, 1, 0.44808361531077549},
    {3, 2, 0.11202090382769387},
    {3, 5, 0.013722560718892499},
    {3, 10, 0.0064932761964095727},
    {3, 20, 0.0048658207629947435},
    {3, 21, 0.0023680610233847984},
    {3, 40, 0.0013918629035444856},
    {3, 100, 0.00024861672925332658},
    {4.85, 1, 0.18414301090166321},
    {4.85, 2, 0.37392540151218985},
    {4.85, 5, 0.032386875562199224},
    {4.85, 10, 0.0023099990385043154},
    {4.85, 20, 0.00011380064647362225},
    {4.85, 21, 0.00099254344393937249},
    {4.85, 40, 0.002656250415334572},
    {4.85, 100, 0.00036506263902211348},
    {9, 1, 0.0099961941310210435},
    {9, 2, 0.12245337810500778},
    {9, 5, 0.079775876786879815},
    {9, 10, 0.033065114747382042},
    {9, 20, 0.0018608412577688747},
    {9, 21, 0.0082777181127118323},
    {9, 40, 0.0023316541203780805},
    {9, 100, 0.00039627490714154491},
};

}  // namespace

TEST_CASE("splitter is unitary in both phase conventions") {
  for (double b : {0.0, 0.05, 0.3, 2.0}) {
    for (auto ph : {ReflectionPhase::kSymmetric, ReflectionPhase::kRealAntisymmetric}) {
      const auto s = SplitterParams::from_beta(b, ph);
      CHECK(s.t_amp == doctest::Approx(std::exp(-kPi * b)));
      CHECK(s.r_amp * s.r_amp + s.t_amp * s.t_amp == doctest::Approx(1.0));
      // columns of [[t, emit], [absorb, t]] are orthogonal
      CHECK(std::abs(s.t_amp * s.emit() + std::conj(s.absorb()) * s.t_amp) < 1e-15);
    }
  }
  CHECK(code_of([] { SplitterParams::from_beta(-0.1); }) == ErrorCode::kInvalidArgument);
  NetworkSpec bad;
  bad.cells = 0;
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("single memory closed forms") {
  CHECK(single_memory_efficiency(0.2) == doctest::Approx(std::pow(1 - std::exp(-0.4 * kPi), 2)));
  CHECK(single_memory_efficiency(2.0) > 0.99999);
  for (double b : {0.0, 0.1, 1.0}) {
    const auto l = single_memory_ledger(b);
    CHECK(l.transmitted + l.echo + l.residual == doctest::Approx(1.0));
    CHECK(transverse_efficiency(b, 1) == doctest::Approx(single_memory_efficiency(b)));
    CHECK(multiswitch_echo_energy(b, 1) == doctest::Approx(single_memory_efficiency(b)));
  }
}

TEST_CASE("transverse limit") {
  CHECK(std::abs(thin_limit_efficiency(2.0) - 4.0 * std::exp(-2.0)) < 1e-15);
  for (double d : {0.5, 2.0, 6.0}) {
    double prev = INFINITY;
    for (int m : {10, 100, 1000}) {
      const double gap = std::abs(transverse_efficiency(d / (2 * kPi * m), m) - thin_limit_efficiency(d));
      CHECK(gap < prev);
      CHECK(gap * m < 1.0);
      prev = gap;
    }
  }
}

TEST_CASE("multiswitch energies are geometric") {
  for (double b : {0.05, 0.3}) {
    double sum = 0.0;
    for (int k = 1; k <= 400; ++k) sum += multiswitch_echo_energy(b, k);
    CHECK(sum + std::exp(-2 * kPi * b) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("thin-limit echoes") {
  CHECK(transverse_multiswitch_echo(2.0, 1) == doctest::Approx(4.0 * std::exp(-2.0)));
  CHECK(transverse_multiswitch_echo(2.0, 2) == 0.0);
  for (const auto& ref : kThinEchoes) {
    INFO("d = " << ref.d << ", p = " << ref.p);
    CHECK(transverse_multiswitch_echo(ref.d, ref.p) == doctest::Approx(ref.energy).epsilon(1e-10));
  }
  double best = 0.0;
  for (double d = 4.0; d <= 6.0; d += 0.01) best = std::max(best, thin_limit_report(d, 100).cumulative);
  CHECK(best > 0.92);
  const auto r = thin_limit_report(4.85, 100);
  CHECK(r.transmitted + r.cumulative + r.residual == doctest::Approx(1.0));
  CHECK(r.residual >= 0.0);
}

TEST_CASE("path sum equals the closed forms") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> cells(1, 6), flips(1, 4);
  std::uniform_real_distribution<double> beta(0.01, 0.5);
  for (int i = 0; i < 60; ++i) {
    const int m = cells(rng), f = flips(rng);
    const double b = beta(rng);
    const auto ph = i % 2 ? ReflectionPhase::kSymmetric : ReflectionPhase::kRealAntisymmetric;
    const NetworkSpec spec{m, f, SplitterParams::from_beta(b, ph)};
    const auto amps = propagate_network(spec);
    for (int p = 1; p <= f; ++p) {
      const PathSum s = path_sum_oracle(spec, p);
      CHECK(s.paths == count_echo_paths(m, p));
      CHECK(std::abs(s.energy() - finite_cell_echo_energy(b, m, p)) < 1e-12);
      CHECK(std::abs(std::norm(amps.echoes[static_cast<std::size_t>(p - 1)]) - s.energy()) < 1e-12);
    }
  }
}

TEST_CASE("path sum is bitwise reproducible") {
  const NetworkSpec spec{40, 4, SplitterParams::from_beta(0.02)};
  const auto a = path_sum_oracle(spec, 4);
  const auto b = path_sum_oracle(spec, 4);
  CHECK(a.amplitude == b.amplitude);
  CHECK(a.paths == count_echo_paths(40, 4));
}

TEST_CASE("path sum limits") {
  const NetworkSpec spec{100, 4, SplitterParams::from_beta(0.01)};
  CHECK(count_echo_paths(100, 4) > 4'000'000);
  CHECK(code_of([&] { path_sum_oracle(spec, 4, 1000); }) == ErrorCode::kBudgetExceeded);
  CHECK(code_of([&] { path_sum_oracle(spec, 5); }) == ErrorCode::kOutOfRange);
  CHECK(code_of([&] { path_sum_oracle(spec, 0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("echo report closes") {
  const NetworkSpec spec{5, 6, SplitterParams::from_beta(0.1)};
  const auto r = echo_report(spec, 6);
  CHECK(r.closure_defect <= kUnitarityTolerance);
  CHECK(r.echoes.size() == 6);
  const auto amps = propagate_network(spec);
  CHECK(r.residual == doctest::Approx(amps.residual_energy).epsilon(1e-10));
  CHECK(code_of([&] { echo_report(spec, 7); }) == ErrorCode::kOutOfRange);
}

TEST_CASE("printed finite-M expression differs from the path sum") {
  // Recorded for reference: the printed form is not an energy fraction.
  CHECK(printed_multiswitch_formula(0.3, 1, 1) > 1.0);
  CHECK(std::abs(printed_multiswitch_formula(0.3, 3, 2) - finite_cell_echo_energy(0.3, 3, 2)) > 0.01);
}
