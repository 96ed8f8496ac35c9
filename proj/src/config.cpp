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

#include "gemsim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "gemsim/error.hpp"

namespace gem {

Pulse PulseSpec::build() const {
  if (shape == "gaussian") return gaussian_pulse(center, width, amplitude);
  if (shape == "raised-cosine") return raised_cosine_pulse(center, width, amplitude);
  fail(ErrorCode::kConfig, "pulse.shape must be 'gaussian' or 'raised-cosine' (got '" + shape + "')");
}

Grid GridSpec::build(const PhysicalParams& params) const {
  return Grid::for_sample(params, nz, nt, t_min, t_max);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& expected) {
  fail(ErrorCode::kConfig, "invalid value for '" + key + "': '" + value + "' (expected " +
                               expected + ")");
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || end != v.data() + v.size() || !std::isfinite(x))
    bad_value(key, v, "a finite number");
  return x;
}

long long to_integer(const std::string& key, const std::string& v, long long lo) {
  long long x = 0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || end != v.data() + v.size() || x < lo)
    bad_value(key, v, "an integer >= " + std::to_string(lo));
  return x;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::vector<double> to_double_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(to_double(key, item));
  return out;
}

struct Pending {
  std::optional<double> N;
  std::optional<double> beta;
};

using Setter = std::function<void(ScenarioConfig&, Pending&, const std::string& key,
                                  const std::string& value)>;

template <typename F>
Setter number(F f) {
  return [f](ScenarioConfig& c, Pending&, const std::string& k, const std::string& v) {
    f(c) = to_double(k, v);
  };
}

template <typename F>
Setter integer(F f, long long lo) {
  return [f, lo](ScenarioConfig& c, Pending&, const std::string& k, const std::string& v) {
    using T = std::remove_reference_t<decltype(f(c))>;
    f(c) = static_cast<T>(to_integer(k, v, lo));
  };
}

const std::vector<std::pair<std::string, Setter>>& schema() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"scenario.name",
       [](ScenarioConfig& c, Pending&, const std::string&, const std::string& v) {
         c.scenario = v;
       }},
      {"output.dir",
       [](ScenarioConfig& c, Pending&, const std::string&, const std::string& v) {
         c.output_dir = v;
       }},
      {"physics.g", number([](ScenarioConfig& c) -> double& { return c.physics.g; })},
      {"physics.N",
       [](ScenarioConfig&, Pending& p, const std::string& k, const std::string& v) {
         p.N = to_double(k, v);
       }},
      {"physics.beta",
       [](ScenarioConfig&, Pending& p, const std::string& k, const std::string& v) {
         p.beta = to_double(k, v);
       }},
      {"physics.eta", number([](ScenarioConfig& c) -> double& { return c.physics.eta; })},
      {"physics.gamma", number([](ScenarioConfig& c) -> double& { return c.physics.gamma; })},
      {"physics.z0", number([](ScenarioConfig& c) -> double& { return c.physics.z0; })},
      {"grid.nz", integer([](ScenarioConfig& c) -> std::size_t& { return c.grid.nz; }, 2)},
      {"grid.nt", integer([](ScenarioConfig& c) -> std::size_t& { return c.grid.nt; }, 2)},
      {"grid.t_min", number([](ScenarioConfig& c) -> double& { return c.grid.t_min; })},
      {"grid.t_max", number([](ScenarioConfig& c) -> double& { return c.grid.t_max; })},
      {"pulse.shape",
       [](ScenarioConfig& c, Pending&, const std::string& k, const std::string& v) {
         if (v != "gaussian" && v != "raised-cosine")
           bad_value(k, v, "'gaussian' or 'raised-cosine'");
         c.pulse.shape = v;
       }},
      {"pulse.center", number([](ScenarioConfig& c) -> double& { return c.pulse.center; })},
      {"pulse.width", number([](ScenarioConfig& c) -> double& { return c.pulse.width; })},
      {"pulse.amplitude",
       number([](ScenarioConfig& c) -> double& { return c.pulse.amplitude; })},
      {"flips.times",
       [](ScenarioConfig& c, Pending&, const std::string& k, const std::string& v) {
         c.flips = to_double_list(k, v);
       }},
      {"network.cells", integer([](ScenarioConfig& c) -> int& { return c.network.cells; }, 1)},
      {"network.flips", integer([](ScenarioConfig& c) -> int& { return c.network.flips; }, 1)},
      {"network.beta_per_cell",
       number([](ScenarioConfig& c) -> double& { return c.network.beta_per_cell; })},
      {"network.phase",
       [](ScenarioConfig& c, Pending&, const std::string& k, const std::string& v) {
         if (v == "symmetric") c.network.phase = ReflectionPhase::kSymmetric;
         else if (v == "real") c.network.phase = ReflectionPhase::kRealAntisymmetric;
         else bad_value(k, v, "'symmetric' or 'real'");
       }},
      {"network.path_budget",
       integer([](ScenarioConfig& c) -> std::uint64_t& { return c.network.path_budget; }, 1)},
      {"sweep.betas",
       [](ScenarioConfig& c, Pending&, const std::string& k, const std::string& v) {
         c.sweep.betas = to_double_list(k, v);
       }},
      {"sweep.beta_min", number([](ScenarioConfig& c) -> double& { return c.sweep.beta_min; })},
      {"sweep.beta_max", number([](ScenarioConfig& c) -> double& { return c.sweep.beta_max; })},
      {"sweep.beta_points",
       integer([](ScenarioConfig& c) -> int& { return c.sweep.beta_points; }, 2)},
      {"sweep.echoes", integer([](ScenarioConfig& c) -> int& { return c.sweep.echoes; }, 1)},
      {"sweep.spot_beta",
       number([](ScenarioConfig& c) -> double& { return c.sweep.spot_beta; })},
      {"sweep.d_min", number([](ScenarioConfig& c) -> double& { return c.sweep.d_min; })},
      {"sweep.d_max", number([](ScenarioConfig& c) -> double& { return c.sweep.d_max; })},
      {"sweep.d_points", integer([](ScenarioConfig& c) -> int& { return c.sweep.d_points; }, 3)},
      {"sweep.echo_counts",
       [](ScenarioConfig& c, Pending&, const std::string& k, const std::string& v) {
         c.sweep.echo_counts.clear();
         for (const auto& item : split_list(v))
           c.sweep.echo_counts.push_back(static_cast<int>(to_integer(k, item, 1)));
         if (c.sweep.echo_counts.empty()) bad_value(k, v, "a non-empty list");
       }},
      {"sweep.levels", integer([](ScenarioConfig& c) -> int& { return c.sweep.levels; }, 3)},
      {"sweep.nz_base",
       integer([](ScenarioConfig& c) -> std::size_t& { return c.sweep.nz_base; }, 3)},
      {"sweep.refinement",
       number([](ScenarioConfig& c) -> double& { return c.sweep.refinement; })},
      {"sweep.k_max", number([](ScenarioConfig& c) -> double& { return c.sweep.k_max; })},
      {"sweep.k_points", integer([](ScenarioConfig& c) -> int& { return c.sweep.k_points; }, 3)},
      {"series.eta2", number([](ScenarioConfig& c) -> double& { return c.series.eta2; })},
      {"series.t_start", number([](ScenarioConfig& c) -> double& { return c.series.t_start; })},
      {"series.t_end", number([](ScenarioConfig& c) -> double& { return c.series.t_end; })},
      {"series.samples", integer([](ScenarioConfig& c) -> int& { return c.series.samples; }, 2)},
      {"thresholds.relative_tolerance",
       number([](ScenarioConfig& c) -> double& { return c.thresholds.relative_tolerance; })},
      {"thresholds.multi_echo_tolerance",
       number([](ScenarioConfig& c) -> double& { return c.thresholds.multi_echo_tolerance; })},
      {"thresholds.energy_defect_max",
       number([](ScenarioConfig& c) -> double& { return c.thresholds.energy_defect_max; })},
      {"thresholds.fidelity_min",
       number([](ScenarioConfig& c) -> double& { return c.thresholds.fidelity_min; })},
      {"thresholds.vacuum_tolerance",
       number([](ScenarioConfig& c) -> double& { return c.thresholds.vacuum_tolerance; })},
      {"thresholds.residual_max",
       number([](ScenarioConfig& c) -> double& { return c.thresholds.residual_max; })},
      {"thresholds.oracle_tolerance",
       number([](ScenarioConfig& c) -> double& { return c.thresholds.oracle_tolerance; })},
      {"thresholds.closure_tolerance",
       number([](ScenarioConfig& c) -> double& { return c.thresholds.closure_tolerance; })},
      {"thresholds.gamma_tolerance",
       number([](ScenarioConfig& c) -> double& { return c.thresholds.gamma_tolerance; })},
      {"thresholds.order_min",
       number([](ScenarioConfig& c) -> double& { return c.thresholds.order_min; })},
      {"thresholds.refinement_gain_min",
       number([](ScenarioConfig& c) -> double& { return c.thresholds.refinement_gain_min; })},
      {"thresholds.phase_tolerance",
       number([](ScenarioConfig& c) -> double& { return c.thresholds.phase_tolerance; })},
      {"thresholds.matching_tolerance",
       number([](ScenarioConfig& c) -> double& { return c.thresholds.matching_tolerance; })},
      {"thresholds.cumulative_min",
       number([](ScenarioConfig& c) -> double& { return c.thresholds.cumulative_min; })},
      {"thresholds.peak_tolerance",
       number([](ScenarioConfig& c) -> double& { return c.thresholds.peak_tolerance; })},
      {"thresholds.spot_efficiency_min",
       number([](ScenarioConfig& c) -> double& { return c.thresholds.spot_efficiency_min; })},
      {"thresholds.efficiency_min",
       [](ScenarioConfig& c, Pending&, const std::string& k, const std::string& v) {
         c.thresholds.efficiency_min = to_double(k, v);
       }},
  };
  return table;
}

const Setter* find_setter(const std::string& key) {
  for (const auto& [name, setter] : schema())
    if (name == key) return &setter;
  return nullptr;
}

bool known_section(const std::string& section) {
  for (const auto& [name, setter] : schema())
    if (name.compare(0, section.size() + 1, section + ".") == 0) return true;
  return false;
}

void resolve_density(ScenarioConfig& c, const Pending& p) {
  if (p.N && p.beta)
    fail(ErrorCode::kConfig, "set either 'physics.N' or 'physics.beta', not both");
  if (p.N) c.physics.N = *p.N;
  if (p.beta) {
    const double g2 = c.physics.g * c.physics.g;
    if (*p.beta != 0.0 && !(g2 > 0.0))
      fail(ErrorCode::kConfig, "'physics.beta' needs physics.g > 0");
    if (*p.beta * c.physics.eta < 0.0)
      fail(ErrorCode::kConfig,
           "'physics.beta' must have the sign of physics.eta (beta = g^2 N / eta with N >= 0)");
    c.physics.N = *p.beta == 0.0 ? 0.0 : *p.beta * c.physics.eta / g2;
  }
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig c;
  Pending pending;
  std::set<std::string> seen;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find_first_of("#;");
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = " (line " + std::to_string(line_no) + ")";
    if (line.front() == '[') {
      if (line.back() != ']') fail(ErrorCode::kConfig, "malformed section header" + where);
      section = trim(line.substr(1, line.size() - 2));
      if (!known_section(section))
        fail(ErrorCode::kConfig, "unknown section '[" + section + "]'" + where);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::kConfig, "expected 'key = value'" + where);
    if (section.empty())
      fail(ErrorCode::kConfig, "key '" + trim(line.substr(0, eq)) + "' outside any section" + where);
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const Setter* setter = find_setter(key);
    if (!setter) fail(ErrorCode::kConfig, "unknown key '" + key + "'" + where);
    if (!seen.insert(key).second) fail(ErrorCode::kConfig, "duplicate key '" + key + "'" + where);
    (*setter)(c, pending, key, value);
    c.entries.emplace_back(key, value);
  }
  resolve_density(c, pending);
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::kConfig, "cannot read config file '" + path + "'");
  std::ostringstream text;
  text << f.rdbuf();
  return parse_config(text.str());
}

std::vector<std::string> known_config_keys() {
  std::vector<std::string> keys;
  for (const auto& [name, setter] : schema()) keys.push_back(name);
  return keys;
}

}  // namespace gem
