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

#include "gemsim/gemsim.h"

#include <algorithm>
#include <iostream>
#include <string>

#include "gemsim/bs_network.hpp"
#include "gemsim/complex_gamma.hpp"
#include "gemsim/error.hpp"
#include "gemsim/experiments.hpp"
#include "gemsim/mb_solver.hpp"

struct gem_pulse {
  gem::Pulse pulse;
};

struct gem_result {
  gem::SimResult result;
};

namespace {

thread_local std::string g_last_error;

gem_status record(gem_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <typename F>
gem_status guarded(F&& f) {
  try {
    f();
    return GEM_OK;
  } catch (const gem::Error& e) {
    return record(static_cast<gem_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return record(GEM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(GEM_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(GEM_ERR_INTERNAL, "unknown error");
  }
}

#define GEM_REQUIRE(ptr)                                                  \
  do {                                                                    \
    if (!(ptr)) return record(GEM_ERR_NULL_POINTER, #ptr " is NULL");     \
  } while (0)

gem::PhysicalParams to_params(const gem_params& p) {
  gem::PhysicalParams q;
  q.g = p.g;
  q.N = p.N;
  q.eta = p.eta;
  q.gamma = p.gamma;
  q.z0 = p.z0;
  return q;
}

const char* expected_scenario(const std::string& command) {
  if (command == "analytic") return "analytic";
  if (command == "network") return "network";
  if (command == "fig4") return "fig4";
  if (command == "fig5") return "fig5";
  if (command == "converge") return "convergence";
  if (command == "series") return "series";
  return nullptr;
}

}  // namespace

extern "C" {

const char* gem_version(void) { return GEMSIM_VERSION; }

const char* gem_last_error(void) { return g_last_error.c_str(); }

const char* gem_status_name(gem_status status) {
  switch (status) {
    case GEM_OK: return "ok";
    case GEM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GEM_ERR_OUT_OF_RANGE: return "out of range";
    case GEM_ERR_NUMERICAL: return "numerical failure";
    case GEM_ERR_BUDGET_EXCEEDED: return "budget exceeded";
    case GEM_ERR_CONFIG: return "configuration error";
    case GEM_ERR_IO: return "i/o error";
    case GEM_ERR_INTERNAL: return "internal error";
    case GEM_ERR_NULL_POINTER: return "null pointer";
  }
  return "unknown status";
}

gem_params gem_default_params(void) {
  const gem::PhysicalParams d;
  return {d.g, d.N, d.eta, d.gamma, d.z0};
}

gem_status gem_beta(const gem_params* params, double* beta) {
  GEM_REQUIRE(params);
  GEM_REQUIRE(beta);
  return guarded([&] {
    const auto p = to_params(*params);
    p.validate();
    *beta = gem::beta(p);
  });
}

gem_status gem_pulse_gaussian(double center, double sigma, double amp_re, double amp_im,
                              gem_pulse** out) {
  GEM_REQUIRE(out);
  return guarded([&] {
    *out = new gem_pulse{gem::gaussian_pulse(center, sigma, {amp_re, amp_im})};
  });
}

gem_status gem_pulse_raised_cosine(double center, double half_width, double amp_re,
                                   double amp_im, gem_pulse** out) {
  GEM_REQUIRE(out);
  return guarded([&] {
    *out = new gem_pulse{gem::raised_cosine_pulse(center, half_width, {amp_re, amp_im})};
  });
}

void gem_pulse_free(gem_pulse* pulse) { delete pulse; }

gem_status gem_pulse_eval(const gem_pulse* pulse, double t, double* re, double* im) {
  GEM_REQUIRE(pulse);
  return guarded([&] {
    const auto v = pulse->pulse(t);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

gem_status gem_pulse_energy(const gem_pulse* pulse, double* energy) {
  GEM_REQUIRE(pulse);
  GEM_REQUIRE(energy);
  return guarded([&] { *energy = gem::pulse_energy(pulse->pulse); });
}

gem_status gem_simulate(const gem_params* params, const gem_grid* grid, const gem_pulse* input,
                        const double* flips, size_t n_flips, const gem_pulse* aux,
                        gem_result** out) {
  GEM_REQUIRE(params);
  GEM_REQUIRE(grid);
  GEM_REQUIRE(input);
  GEM_REQUIRE(out);
  if (n_flips > 0 && !flips) return record(GEM_ERR_NULL_POINTER, "flips is NULL");
  return guarded([&] {
    const auto p = to_params(*params);
    const auto g = gem::Grid::for_sample(p, grid->nz, grid->nt, grid->t_min, grid->t_max);
    std::optional<gem::Pulse> auxiliary;
    if (aux) auxiliary = aux->pulse;
    gem::FlipSchedule schedule(std::vector<double>(flips, flips + n_flips));
    *out = new gem_result{gem::simulate(p, g, input->pulse, schedule, auxiliary)};
  });
}

void gem_result_free(gem_result* result) { delete result; }

gem_status gem_result_length(const gem_result* result, size_t* n) {
  GEM_REQUIRE(result);
  GEM_REQUIRE(n);
  *n = result->result.times.size();
  return GEM_OK;
}

gem_status gem_result_output(const gem_result* result, double* times, double* re, double* im,
                             size_t capacity) {
  GEM_REQUIRE(result);
  const auto& r = result->result;
  const size_t n = std::min(capacity, r.times.size());
  for (size_t i = 0; i < n; ++i) {
    if (times) times[i] = r.times[i];
    if (re) re[i] = r.out_series[i].real();
    if (im) im[i] = r.out_series[i].imag();
  }
  return GEM_OK;
}

gem_status gem_result_energies(const gem_result* result, double* input, double* transmitted,
                               double* residual) {
  GEM_REQUIRE(result);
  const auto& l = result->result.ledger;
  if (input) *input = l.input_energy;
  if (transmitted) *transmitted = l.transmitted_energy;
  if (residual) *residual = l.residual_excitation;
  return GEM_OK;
}

gem_status gem_result_echo_count(const gem_result* result, size_t* n) {
  GEM_REQUIRE(result);
  GEM_REQUIRE(n);
  *n = result->result.ledger.echo_energies.size();
  return GEM_OK;
}

gem_status gem_result_echo_energy(const gem_result* result, size_t k, double* energy) {
  GEM_REQUIRE(result);
  GEM_REQUIRE(energy);
  const auto& e = result->result.ledger.echo_energies;
  if (k < 1 || k > e.size())
    return record(GEM_ERR_OUT_OF_RANGE, "echo index " + std::to_string(k) + " outside 1.." +
                                            std::to_string(e.size()));
  *energy = e[k - 1];
  return GEM_OK;
}

gem_status gem_result_efficiency(const gem_result* result, double t_start, double t_end,
                                 double* efficiency) {
  GEM_REQUIRE(result);
  GEM_REQUIRE(efficiency);
  return guarded(
      [&] { *efficiency = gem::measure_efficiency(result->result, {t_start, t_end}); });
}

gem_status gem_result_echo_fidelity(const gem_result* result, const gem_pulse* input,
                                    double flip_time, double* fidelity) {
  GEM_REQUIRE(result);
  GEM_REQUIRE(input);
  GEM_REQUIRE(fidelity);
  return guarded(
      [&] { *fidelity = gem::echo_fidelity(result->result, input->pulse, flip_time); });
}

gem_status gem_gamma_imag(double y, double* re, double* im) {
  return guarded([&] {
    const auto g = gem::complex_gamma_imag(y);
    if (re) *re = g.real();
    if (im) *im = g.imag();
  });
}

gem_status gem_single_memory_efficiency(double beta, double* out) {
  GEM_REQUIRE(out);
  return guarded([&] { *out = gem::single_memory_efficiency(beta); });
}

gem_status gem_multiswitch_echo(double beta, int k, double* out) {
  GEM_REQUIRE(out);
  return guarded([&] { *out = gem::multiswitch_echo_energy(beta, k); });
}

gem_status gem_transverse_efficiency(double beta, int cells, double* out) {
  GEM_REQUIRE(out);
  return guarded([&] { *out = gem::transverse_efficiency(beta, cells); });
}

gem_status gem_finite_cell_echo(double beta, int cells, int p, double* out) {
  GEM_REQUIRE(out);
  return guarded([&] { *out = gem::finite_cell_echo_energy(beta, cells, p); });
}

gem_status gem_thin_limit_echo(double d, int p, double* out) {
  GEM_REQUIRE(out);
  return guarded([&] { *out = gem::transverse_multiswitch_echo(d, p); });
}

gem_status gem_path_sum(int cells, int flips, double beta, gem_reflection_phase phase, int p,
                        uint64_t budget, double* energy, uint64_t* paths) {
  return guarded([&] {
    const auto ph = phase == GEM_PHASE_REAL ? gem::ReflectionPhase::kRealAntisymmetric
                                            : gem::ReflectionPhase::kSymmetric;
    const gem::NetworkSpec spec{cells, flips, gem::SplitterParams::from_beta(beta, ph)};
    const auto sum = gem::path_sum_oracle(spec, p, budget);
    if (energy) *energy = sum.energy();
    if (paths) *paths = sum.paths;
  });
}

gem_status gem_run_command(const char* command, const char* config_path, const char* out_dir,
                           int* exit_code) {
  GEM_REQUIRE(command);
  GEM_REQUIRE(config_path);
  GEM_REQUIRE(exit_code);
  *exit_code = 2;
  const std::string cmd = command;
  const gem_status s = guarded([&] {
    gem::ScenarioConfig config = gem::load_config(config_path);
    if (cmd == "simulate") {
      const auto& sims = gem::simulation_scenarios();
      if (std::find(sims.begin(), sims.end(), config.scenario) == sims.end()) {
        std::string valid;
        for (const auto& n : sims) valid += (valid.empty() ? "" : ", ") + n;
        gem::fail(gem::ErrorCode::kConfig, "'simulate' needs scenario.name to be one of: " + valid +
                                               " (got '" + config.scenario + "')");
      }
    } else if (const char* expected = expected_scenario(cmd)) {
      if (config.scenario.empty()) config.scenario = expected;
      if (config.scenario != expected)
        gem::fail(gem::ErrorCode::kConfig, "command '" + cmd + "' runs scenario '" + expected +
                                               "' but the config names '" + config.scenario + "'");
    } else {
      gem::fail(gem::ErrorCode::kConfig, "unknown command '" + cmd + "'");
    }
    const std::string dir = out_dir && *out_dir ? out_dir : config.output_dir;
    if (dir.empty())
      gem::fail(gem::ErrorCode::kConfig, "no output directory: pass --out or set output.dir");

    const gem::ScenarioOutcome outcome = gem::run_scenario(config);
    gem::write_outcome(outcome, config, dir);
    gem::print_summary(outcome, std::cout);
    *exit_code = outcome.all_pass() ? 0 : 1;
  });
  if (s != GEM_OK) {
    std::cerr << "error: " << g_last_error << "\n";
    const bool config_like = s == GEM_ERR_CONFIG || s == GEM_ERR_INVALID_ARGUMENT ||
                             s == GEM_ERR_OUT_OF_RANGE || s == GEM_ERR_IO;
    *exit_code = config_like ? 2 : 1;
  }
  return s;
}

}  // extern "C"
