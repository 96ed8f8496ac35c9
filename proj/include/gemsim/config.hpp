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

// Scenario configuration files: flat `key = value` lines grouped under
// `[section]` headers. See docs/config.md for the full key reference.

#ifndef GEMSIM_CONFIG_HPP
#define GEMSIM_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gemsim/bs_network.hpp"
#include "gemsim/core_model.hpp"

namespace gem {

struct PulseSpec {
  std::string shape = "gaussian";  ///< "gaussian" or "raised-cosine"
  double center = -6.0;
  double width = 1.0;              ///< sigma, or the half width of a raised cosine
  double amplitude = 1.0;

  Pulse build() const;
};

struct GridSpec {
  std::size_t nz = 2401;
  std::size_t nt = 15001;
  double t_min = -12.0;
  double t_max = 12.0;

  Grid build(const PhysicalParams& params) const;
};

struct NetworkConfig {
  int cells = 1;
  int flips = 3;
  double beta_per_cell = 0.1;
  ReflectionPhase phase = ReflectionPhase::kSymmetric;
  std::uint64_t path_budget = kDefaultPathBudget;
};

struct SweepSpec {
  std::vector<double> betas;  ///< simulation scenarios; empty means physics.beta only
  double beta_min = 0.0;
  double beta_max = 1.2;
  int beta_points = 121;
  int echoes = 5;
  double spot_beta = 2.0;
  double d_min = 0.0;
  double d_max = 12.0;
  int d_points = 1201;
  std::vector<int> echo_counts{1, 10, 100};
  int levels = 3;
  std::size_t nz_base = 141;
  double refinement = 2.0;
  double k_max = 20.0;
  int k_points = 801;
};

struct SeriesSpec {
  double eta2 = -1.0;
  double t_start = 1.0;
  double t_end = 2.0;
  int samples = 201;
};

struct Thresholds {
  double relative_tolerance = 0.02;
  double multi_echo_tolerance = 0.03;
  double energy_defect_max = 0.02;
  double fidelity_min = 0.99;
  double vacuum_tolerance = 1e-10;
  double residual_max = 0.02;
  double oracle_tolerance = 1e-10;
  double closure_tolerance = 1e-12;
  double gamma_tolerance = 1e-12;
  double order_min = 1.7;
  double refinement_gain_min = 4.0;
  double phase_tolerance = 1e-6;
  double matching_tolerance = 1e-8;
  double cumulative_min = 0.9;
  double peak_tolerance = 1e-12;
  double spot_efficiency_min = 0.9999;
  std::optional<double> efficiency_min;
};

struct ScenarioConfig {
  std::string scenario;
  PhysicalParams physics;
  GridSpec grid;
  PulseSpec pulse;
  std::vector<double> flips{0.0};
  NetworkConfig network;
  SweepSpec sweep;
  SeriesSpec series;
  Thresholds thresholds;
  std::string output_dir;
  /// `section.key = value` entries in file order, echoed into CSV headers.
  std::vector<std::pair<std::string, std::string>> entries;
};

/// Parses configuration text. Throws Error(kConfig) naming the offending key
/// or line on any unknown section, unknown key, duplicate or malformed value.
ScenarioConfig parse_config(const std::string& text);

/// Reads and parses a configuration file; Error(kConfig) if it cannot be read.
ScenarioConfig load_config(const std::string& path);

/// Every `section.key` the parser accepts, in documentation order.
std::vector<std::string> known_config_keys();

}  // namespace gem

#endif  // GEMSIM_CONFIG_HPP
