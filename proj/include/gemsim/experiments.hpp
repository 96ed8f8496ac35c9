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

// Scenario runners. Each scenario builds its tables, checks headline numbers
// against the thresholds in the configuration and, when an output directory
// is given, writes CSV files, SVG plots and a summary.txt there.

#ifndef GEMSIM_EXPERIMENTS_HPP
#define GEMSIM_EXPERIMENTS_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gemsim/config.hpp"
#include "gemsim/output.hpp"

namespace gem {

#ifndef GEMSIM_VERSION
#define GEMSIM_VERSION "0.0.0"
#endif

struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  std::string relation;  ///< "<=", ">=", "<"
  bool pass = false;
};

struct ScenarioOutcome {
  std::string scenario;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> quantities;
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, CsvTable>> tables;  ///< file name, table
  std::vector<std::pair<std::string, LinePlot>> plots;   ///< file name, plot

  bool all_pass() const;
  void check_le(std::string name, double value, double limit);
  void check_ge(std::string name, double value, double limit);
  void check_lt(std::string name, double value, double limit);
  void quantity(std::string name, double value);
  const CsvTable& table(const std::string& file) const;
};

/// Names accepted by run_scenario().
const std::vector<std::string>& scenario_names();
/// Subset run by the `simulate` command.
const std::vector<std::string>& simulation_scenarios();

/// Dispatches on config.scenario. Throws Error(kConfig) listing the valid
/// names when the scenario is unknown. Nothing is written to disk.
ScenarioOutcome run_scenario(const ScenarioConfig& config);

/// Writes every table and plot plus summary.txt into `dir` (created if needed).
void write_outcome(const ScenarioOutcome& outcome, const ScenarioConfig& config,
                   const std::string& dir);

void print_summary(const ScenarioOutcome& outcome, std::ostream& os);

// Individual scenarios; run_scenario() routes to these.
ScenarioOutcome vacuum_scenario(const ScenarioConfig& config);
ScenarioOutcome single_echo_scenario(const ScenarioConfig& config);
ScenarioOutcome multi_echo_scenario(const ScenarioConfig& config);
ScenarioOutcome auxiliary_recall_scenario(const ScenarioConfig& config);
ScenarioOutcome time_reversal_scenario(const ScenarioConfig& config);
ScenarioOutcome analytic_scenario(const ScenarioConfig& config);
ScenarioOutcome network_scenario(const ScenarioConfig& config);
ScenarioOutcome reproduce_fig4(const ScenarioConfig& config);
ScenarioOutcome reproduce_fig5(const ScenarioConfig& config);
ScenarioOutcome convergence_sweep(const ScenarioConfig& config);
ScenarioOutcome series_memories_scenario(const ScenarioConfig& config);

/// Least-squares slope of log(error) against log(1/h).
double fitted_order(const std::vector<double>& h, const std::vector<double>& error);

/// Provenance lines placed at the top of every CSV.
std::vector<std::string> provenance_lines(const ScenarioConfig& config);

}  // namespace gem

#endif  // GEMSIM_EXPERIMENTS_HPP
