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

#include "gemsim/bs_network.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

#include "gemsim/core_model.hpp"
#include "gemsim/error.hpp"

namespace gem {

namespace {

void require_beta(double beta, const char* who) {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    fail(ErrorCode::kInvalidArgument, std::string(who) + ": beta must be finite and >= 0");
}

void require_index(int k, const char* who) {
  if (k < 1) fail(ErrorCode::kInvalidArgument, std::string(who) + ": echo index must be >= 1");
}

// e^{-2 beta pi} and 1 - e^{-2 beta pi}, the latter without cancellation.
double energy_transmission(double beta) { return std::exp(-2.0 * kPi * beta); }
double energy_reflection(double beta) { return -std::expm1(-2.0 * kPi * beta); }

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

}  // namespace

SplitterParams SplitterParams::from_beta(double beta, ReflectionPhase phase) {
  require_beta(beta, "SplitterParams");
  SplitterParams s;
  s.beta_per_cell = beta;
  s.t_amp = std::exp(-kPi * beta);
  s.r_amp = std::sqrt(energy_reflection(beta));
  s.phase = phase;
  return s;
}

std::complex<double> SplitterParams::absorb() const {
  return phase == ReflectionPhase::kSymmetric ? std::complex<double>{0.0, r_amp}
                                              : std::complex<double>{r_amp, 0.0};
}

std::complex<double> SplitterParams::emit() const {
  return phase == ReflectionPhase::kSymmetric ? std::complex<double>{0.0, r_amp}
                                              : std::complex<double>{-r_amp, 0.0};
}

void NetworkSpec::validate() const {
  if (cells < 1) fail(ErrorCode::kInvalidArgument, "network needs at least one cell");
  if (num_flips < 1) fail(ErrorCode::kInvalidArgument, "network needs at least one flip");
  const auto& s = splitter;
  if (!(s.t_amp > 0.0 && s.t_amp <= 1.0))
    fail(ErrorCode::kInvalidArgument, "splitter transmission must lie in (0, 1]");
  if (std::abs(s.r_amp * s.r_amp + s.t_amp * s.t_amp - 1.0) > 1e-12)
    fail(ErrorCode::kInvalidArgument, "splitter must be unitary: r^2 + t^2 = 1");
}

double single_memory_efficiency(double beta) {
  require_beta(beta, "single_memory_efficiency");
  const double r = energy_reflection(beta);
  return r * r;
}

SingleMemoryLedger single_memory_ledger(double beta) {
  require_beta(beta, "single_memory_ledger");
  const double t = energy_transmission(beta);
  const double r = energy_reflection(beta);
  return {t, r * r, t * r};
}

double transverse_efficiency(double beta, int cells) {
  require_beta(beta, "transverse_efficiency");
  if (cells < 1) fail(ErrorCode::kInvalidArgument, "transverse_efficiency: M must be >= 1");
  const double m = cells;
  const double r = energy_reflection(beta);
  return m * m * r * r * std::exp(-2.0 * kPi * beta * (m - 1.0));
}

double thin_limit_efficiency(double d) {
  if (!(d >= 0.0)) fail(ErrorCode::kInvalidArgument, "thin_limit_efficiency: d must be >= 0");
  return d * d * std::exp(-d);
}

double multiswitch_echo_energy(double beta, int k) {
  require_beta(beta, "multiswitch_echo_energy");
  require_index(k, "multiswitch_echo_energy");
  const double r = energy_reflection(beta);
  return r * r * std::exp(-2.0 * kPi * beta * (k - 1));
}

double finite_cell_echo_energy(double beta, int cells, int p) {
  require_beta(beta, "finite_cell_echo_energy");
  require_index(p, "finite_cell_echo_energy");
  if (cells < 1) fail(ErrorCode::kInvalidArgument, "finite_cell_echo_energy: M must be >= 1");
  const double big_r = energy_reflection(beta);
  const double log_t = -kPi * beta;
  double amp = 0.0;
  for (int q = 1; q <= std::min(p, cells); ++q) {
    const double term = binomial(p - 1, q - 1) * binomial(cells, q) * std::pow(big_r, q) *
                        std::exp(log_t * (cells + p - 2 * q));
    amp += (q % 2 == 0) ? term : -term;
  }
  return amp * amp;
}

double transverse_multiswitch_echo(double d, int p) {
  if (!(d >= 0.0) || !std::isfinite(d))
    fail(ErrorCode::kInvalidArgument, "transverse_multiswitch_echo: d must be finite and >= 0");
  require_index(p, "transverse_multiswitch_echo");
  // -(d/p) L_{p-1}^{(1)}(d) by the three-term recurrence. The equivalent
  // alternating power sum loses up to eight digits to cancellation at d ~ 10.
  double l_prev = 1.0;  // L_0
  double l_cur = 1.0;
  if (p > 1) l_cur = 2.0 - d;  // L_1
  for (int n = 1; n < p - 1; ++n) {
    const double l_next = ((2.0 * n + 2.0 - d) * l_cur - (n + 1.0) * l_prev) / (n + 1.0);
    l_prev = l_cur;
    l_cur = l_next;
  }
  const double sum = -(d / p) * l_cur;
  return std::exp(-d) * sum * sum;
}

double printed_multiswitch_formula(double beta, int cells, int p) {
  require_beta(beta, "printed_multiswitch_formula");
  require_index(p, "printed_multiswitch_formula");
  const double t = std::exp(-kPi * beta);
  const double r = energy_reflection(beta);
  const double x = -r * r / (t * t);
  double sum = 0.0;
  double x_power_over_factorial = 1.0;
  for (int k = 1; k <= p; ++k) {
    x_power_over_factorial *= x / k;
    sum += binomial(p - 1, k - 1) * x_power_over_factorial;
  }
  return std::pow(t, cells + p) * sum * sum;
}

// ---------------------------------------------------------------------------
// Path enumeration

std::uint64_t count_echo_paths(int cells, int p) {
  // A path absorbs q times at strictly increasing cells and re-emits each
  // excitation at a later stage, with the last emission at stage p.
  long double total = 0.0L;
  for (int q = 1; q <= std::min(p, cells); ++q)
    total += static_cast<long double>(binomial(p - 1, q - 1)) * binomial(cells, q);
  if (total > 1.8e19L) return UINT64_MAX;
  return static_cast<std::uint64_t>(std::llround(static_cast<double>(total)));
}

namespace {

class PathWalker {
 public:
  PathWalker(const NetworkSpec& spec, int target)
      : cells_(spec.cells),
        target_(target),
        t_(spec.splitter.t_amp),
        absorb_(spec.splitter.absorb()),
        emit_(spec.splitter.emit()) {}

  // Light entering `cell` during `stage`.
  void light(int stage, int cell, std::complex<double> amp) {
    if (cell == cells_) {
      if (stage == target_) {
        sum_ += amp;
        ++paths_;
      }
      return;
    }
    light(stage, cell + 1, amp * t_);
    if (stage < target_) polariton(stage + 1, cell, amp * absorb_);
  }

  // Polariton stored in `cell` meeting its splitter during `stage`.
  void polariton(int stage, int cell, std::complex<double> amp) {
    light(stage, cell + 1, amp * emit_);
    if (stage < target_) polariton(stage + 1, cell, amp * t_);
  }

  std::complex<double> sum() const { return sum_; }
  std::uint64_t paths() const { return paths_; }

 private:
  int cells_;
  int target_;
  double t_;
  std::complex<double> absorb_;
  std::complex<double> emit_;
  std::complex<double> sum_{};
  std::uint64_t paths_ = 0;
};

}  // namespace

PathSum path_sum_oracle(const NetworkSpec& spec, int p, std::uint64_t budget) {
  spec.validate();
  require_index(p, "path_sum_oracle");
  if (p > spec.num_flips) {
    std::ostringstream msg;
    msg << "path_sum_oracle: echo " << p << " needs at least " << p << " flips (network has "
        << spec.num_flips << ")";
    fail(ErrorCode::kOutOfRange, msg.str());
  }
  const std::uint64_t expected = count_echo_paths(spec.cells, p);
  if (expected > budget) {
    std::ostringstream msg;
    msg << "path_sum_oracle: " << expected << " paths exceed the enumeration budget of "
        << budget;
    fail(ErrorCode::kBudgetExceeded, msg.str());
  }

  // Every path first meets a reflection at some cell m during stage 0; the
  // subtrees below those prefixes are disjoint.
  const int cells = spec.cells;
  std::vector<PathSum> partial(static_cast<std::size_t>(cells));
  auto run_range = [&](int lo, int hi) {
    for (int m = lo; m < hi; ++m) {
      PathWalker walker(spec, p);
      const std::complex<double> prefix =
          std::pow(spec.splitter.t_amp, m) * spec.splitter.absorb();
      walker.polariton(1, m, prefix);
      partial[static_cast<std::size_t>(m)] = {walker.sum(), walker.paths()};
    }
  };
  const int workers =
      std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, std::max(1, cells));
  if (workers == 1 || expected < 100000) {
    run_range(0, cells);
  } else {
    std::vector<std::future<void>> jobs;
    for (int w = 0; w < workers; ++w) {
      const int lo = cells * w / workers;
      const int hi = cells * (w + 1) / workers;
      jobs.push_back(std::async(std::launch::async, run_range, lo, hi));
    }
    for (auto& j : jobs) j.get();
  }

  PathSum total;
  for (const auto& part : partial) {
    total.amplitude += part.amplitude;
    total.paths += part.paths;
  }
  return total;
}

NetworkAmplitudes propagate_network(const NetworkSpec& spec) {
  spec.validate();
  const auto& s = spec.splitter;
  const std::size_t cells = static_cast<std::size_t>(spec.cells);
  NetworkAmplitudes out;
  std::vector<std::complex<double>> stored(cells);

  std::complex<double> light = 1.0;
  for (std::size_t m = 0; m < cells; ++m) {
    stored[m] = s.absorb() * light;
    light *= s.t_amp;
  }
  out.transmitted = light;

  for (int stage = 1; stage <= spec.num_flips; ++stage) {
    light = 0.0;
    for (std::size_t m = 0; m < cells; ++m) {
      const std::complex<double> leaving = s.t_amp * light + s.emit() * stored[m];
      stored[m] = s.absorb() * light + s.t_amp * stored[m];
      light = leaving;
    }
    out.echoes.push_back(light);
  }
  out.final_polaritons = stored;
  for (const auto& a : stored) out.residual_energy += std::norm(a);
  return out;
}

EchoReport echo_report(const NetworkSpec& spec, int max_echo) {
  spec.validate();
  if (max_echo < 1) fail(ErrorCode::kInvalidArgument, "echo_report: P must be >= 1");
  if (max_echo > spec.num_flips)
    fail(ErrorCode::kOutOfRange, "echo_report: P exceeds the number of flips");

  const double beta = spec.splitter.beta_per_cell;
  EchoReport r;
  r.transmitted = std::pow(energy_transmission(beta), spec.cells);
  for (int p = 1; p <= max_echo; ++p) {
    const double e = spec.cells == 1 ? multiswitch_echo_energy(beta, p)
                                     : finite_cell_echo_energy(beta, spec.cells, p);
    r.echoes.push_back(e);
    r.cumulative += e;
  }
  r.residual = 1.0 - r.transmitted - r.cumulative;

  NetworkSpec truncated = spec;
  truncated.num_flips = max_echo;
  const NetworkAmplitudes amps = propagate_network(truncated);
  double total = std::norm(amps.transmitted) + amps.residual_energy;
  for (const auto& a : amps.echoes) total += std::norm(a);
  r.closure_defect = std::abs(total - 1.0);
  if (r.closure_defect > kUnitarityTolerance) {
    std::ostringstream msg;
    msg << "echo_report: network fails unitarity closure by " << r.closure_defect;
    fail(ErrorCode::kNumerical, msg.str());
  }
  return r;
}

EchoReport thin_limit_report(double d, int max_echo) {
  if (max_echo < 1) fail(ErrorCode::kInvalidArgument, "thin_limit_report: P must be >= 1");
  EchoReport r;
  r.transmitted = std::exp(-d);
  for (int p = 1; p <= max_echo; ++p) {
    const double e = transverse_multiswitch_echo(d, p);
    r.echoes.push_back(e);
    r.cumulative += e;
  }
  r.residual = 1.0 - r.transmitted - r.cumulative;
  // The thin limit has no finite network behind it; closure holds by definition.
  r.closure_defect = 0.0;
  return r;
}

}  // namespace gem
