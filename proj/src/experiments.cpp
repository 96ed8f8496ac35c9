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

#include "gemsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <ostream>
#include <sstream>

#include "gemsim/analytic.hpp"
#include "gemsim/bs_network.hpp"
#include "gemsim/complex_gamma.hpp"
#include "gemsim/error.hpp"
#include "gemsim/mb_solver.hpp"

namespace gem {

// ---------------------------------------------------------------------------
// Outcome bookkeeping

bool ScenarioOutcome::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void ScenarioOutcome::check_le(std::string name, double value, double limit) {
  checks.push_back({std::move(name), value, limit, "<=", value <= limit});
}

void ScenarioOutcome::check_ge(std::string name, double value, double limit) {
  checks.push_back({std::move(name), value, limit, ">=", value >= limit});
}

void ScenarioOutcome::check_lt(std::string name, double value, double limit) {
  checks.push_back({std::move(name), value, limit, "<", value < limit});
}

void ScenarioOutcome::quantity(std::string name, double value) {
  quantities.emplace_back(std::move(name), value);
}

const CsvTable& ScenarioOutcome::table(const std::string& file) const {
  for (const auto& [name, t] : tables)
    if (name == file) return t;
  fail(ErrorCode::kInvalidArgument, "scenario produced no table '" + file + "'");
}

namespace {

[[noreturn]] void config_error(const std::string& msg) { fail(ErrorCode::kConfig, msg); }

std::string label(const std::string& name, double v) {
  return name + "[" + format_number(v) + "]";
}

double relative_error(double value, double expected) {
  return expected != 0.0 ? std::abs(value - expected) / std::abs(expected) : std::abs(value);
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}

/// physics with its density set so that |beta| = b (the sign follows eta).
PhysicalParams with_beta(const PhysicalParams& physics, double b) {
  if (!(b >= 0.0)) config_error("beta values in a sweep must be >= 0 (got " + format_number(b) + ")");
  PhysicalParams p = physics;
  const double g2 = p.g * p.g;
  if (b > 0.0 && !(g2 > 0.0)) config_error("a nonzero beta needs physics.g > 0");
  p.N = b == 0.0 ? 0.0 : b * std::abs(p.eta) / g2;
  return p;
}

std::vector<double> sweep_betas(const ScenarioConfig& c) {
  if (!c.sweep.betas.empty()) return c.sweep.betas;
  return {std::abs(beta(c.physics))};
}

/// Evaluates f(0..n-1) concurrently; results come back in index order.
template <typename T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& f) {
  std::vector<std::future<T>> jobs;
  jobs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) jobs.push_back(std::async(std::launch::async, f, i));
  std::vector<T> out;
  out.reserve(n);
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

FlipSchedule schedule_of(const ScenarioConfig& c, std::size_t at_least) {
  if (c.flips.size() < at_least)
    config_error("scenario '" + c.scenario + "' needs at least " + std::to_string(at_least) +
                 " entries in 'flips.times'");
  return FlipSchedule(c.flips);
}

std::vector<double> unwrap(const std::vector<double>& phase) {
  std::vector<double> out = phase;
  for (std::size_t i = 1; i < out.size(); ++i) {
    double d = phase[i] - phase[i - 1];
    d -= 2.0 * kPi * std::round(d / (2.0 * kPi));
    out[i] = out[i - 1] + d;
  }
  return out;
}

double span_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

/// Maximizes a unimodal f on [a, b] by golden-section search.
std::pair<double, double> golden_max(const std::function<double(double)>& f, double a, double b) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 200 && b - a > 1e-12; ++i) {
    if (fc >= fd) {
      b = d, d = c, fd = fc;
      c = b - r * (b - a), fc = f(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + r * (b - a), fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

/// Scan maximum of f over `xs`, then refined within one scan step either side.
std::pair<double, double> scan_max(const std::function<double(double)>& f,
                                   const std::vector<double>& xs) {
  std::size_t best = 0;
  double best_value = -INFINITY;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = f(xs[i]);
    if (v > best_value) best_value = v, best = i;
  }
  const double lo = xs[best > 0 ? best - 1 : best];
  const double hi = xs[best + 1 < xs.size() ? best + 1 : best];
  if (hi <= lo) return {xs[best], best_value};
  const auto refined = golden_max(f, lo, hi);
  return refined.second >= best_value ? refined : std::pair{xs[best], best_value};
}

}  // namespace

// ---------------------------------------------------------------------------
// Simulation scenarios

ScenarioOutcome vacuum_scenario(const ScenarioConfig& c) {
  if (beta(c.physics) != 0.0)
    config_error("scenario 'vacuum' needs physics.N = 0 (or physics.beta = 0)");
  ScenarioOutcome out;
  out.scenario = "vacuum";
  const Pulse input = c.pulse.build();
  const Grid grid = c.grid.build(c.physics);
  const SimResult r = simulate(c.physics, grid, input, FlipSchedule(c.flips));

  double peak = 0.0, deviation = 0.0;
  CsvTable t({"t", "in_re", "in_im", "out_re", "out_im"});
  for (std::size_t n = 0; n < r.times.size(); ++n) {
    peak = std::max(peak, std::abs(r.in_series[n]));
    deviation = std::max(deviation, std::abs(r.out_series[n] - r.in_series[n]));
    t.add_row({r.times[n], r.in_series[n].real(), r.in_series[n].imag(), r.out_series[n].real(),
               r.out_series[n].imag()});
  }
  double emitted = r.ledger.transmitted_energy;
  for (double e : r.ledger.echo_energies) emitted += e;
  const double rel_dev = peak > 0.0 ? deviation / peak : deviation;
  out.quantity("input_energy", r.ledger.input_energy);
  out.quantity("output_energy", emitted);
  out.check_le("max_relative_deviation", rel_dev, c.thresholds.vacuum_tolerance);
  out.check_le("energy_relative_error", relative_error(emitted, r.ledger.input_energy),
               c.thresholds.vacuum_tolerance);
  out.tables.emplace_back("vacuum.csv", std::move(t));
  return out;
}

ScenarioOutcome single_echo_scenario(const ScenarioConfig& c) {
  ScenarioOutcome out;
  out.scenario = "single-echo";
  const Pulse input = c.pulse.build();
  const FlipSchedule schedule = schedule_of(c, 1);
  const std::vector<double> betas = sweep_betas(c);

  const auto runs = parallel_map<SimResult>(betas.size(), [&](std::size_t i) {
    const PhysicalParams p = with_beta(c.physics, betas[i]);
    return simulate(p, c.grid.build(p), input, schedule);
  });

  const TimeInterval window = echo_window(input, schedule, 1);
  CsvTable summary({"beta", "transmission", "transmission_expected", "efficiency",
                    "efficiency_expected", "residual", "residual_expected", "energy_defect"});
  std::vector<std::string> headers{"t", "in_abs"};
  for (double b : betas) headers.push_back("out_abs_beta_" + format_number(b));
  CsvTable series(headers);
  LinePlot plot{"Output field", "t", "|E_out|", {}};

  for (std::size_t i = 0; i < betas.size(); ++i) {
    const double b = betas[i];
    const SimResult& r = runs[i];
    const double big_t = std::exp(-2.0 * kPi * b);
    const double big_r = -std::expm1(-2.0 * kPi * b);
    const double trans = std::sqrt(r.ledger.transmitted_energy / r.ledger.input_energy);
    const double eff = measure_efficiency(r, window);
    const double resid = r.ledger.residual_excitation / r.ledger.input_energy;
    const double defect = energy_balance(r).defect;
    summary.add_row({b, trans, std::exp(-kPi * b), eff, big_r * big_r, resid, big_t * big_r, defect});

    out.quantity(label("efficiency", b), eff);
    out.check_le(label("transmission_rel_error", b), relative_error(trans, std::exp(-kPi * b)),
                 c.thresholds.relative_tolerance);
    out.check_le(label("efficiency_rel_error", b), relative_error(eff, big_r * big_r),
                 c.thresholds.relative_tolerance);
    out.check_le(label("energy_defect", b), defect, c.thresholds.energy_defect_max);
    if (c.thresholds.efficiency_min)
      out.check_ge(label("efficiency", b), eff, *c.thresholds.efficiency_min);

    PlotSeries s{"beta " + format_number(b), r.times, {}};
    for (const auto& v : r.out_series) s.y.push_back(std::abs(v));
    plot.series.push_back(std::move(s));
  }
  for (std::size_t n = 0; n < runs.front().times.size(); ++n) {
    std::vector<double> row{runs.front().times[n], std::abs(runs.front().in_series[n])};
    for (const auto& r : runs) row.push_back(n < r.out_series.size() ? std::abs(r.out_series[n]) : NAN);
    series.add_row(std::move(row));
  }
  out.tables.emplace_back("single_echo.csv", std::move(summary));
  out.tables.emplace_back("output_series.csv", std::move(series));
  out.plots.emplace_back("output_series.svg", std::move(plot));
  return out;
}

ScenarioOutcome multi_echo_scenario(const ScenarioConfig& c) {
  ScenarioOutcome out;
  out.scenario = "multi-echo";
  const Pulse input = c.pulse.build();
  const FlipSchedule schedule = schedule_of(c, 1);
  const int flips = static_cast<int>(schedule.size());
  const std::vector<double> betas = sweep_betas(c);

  const auto runs = parallel_map<SimResult>(betas.size(), [&](std::size_t i) {
    const PhysicalParams p = with_beta(c.physics, betas[i]);
    return simulate(p, c.grid.build(p), input, schedule);
  });

  CsvTable echoes({"beta", "k", "energy", "energy_expected", "relative_error"});
  CsvTable closure({"beta", "transmitted", "cumulative", "residual", "closure_defect",
                    "emitted_expected"});
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const double b = betas[i];
    const SimResult& r = runs[i];
    const double big_t = std::exp(-2.0 * kPi * b);
    const double big_r = -std::expm1(-2.0 * kPi * b);
    double cumulative = 0.0;
    for (int k = 1; k <= flips; ++k) {
      const double e = measure_efficiency(r, echo_window(input, schedule, k));
      const double expected = multiswitch_echo_energy(b, k);
      cumulative += e;
      echoes.add_row({b, static_cast<double>(k), e, expected, relative_error(e, expected)});
      out.check_le(label("echo" + std::to_string(k) + "_rel_error", b),
                   relative_error(e, expected), c.thresholds.multi_echo_tolerance);
    }
    const double trans = r.ledger.transmitted_energy / r.ledger.input_energy;
    const double resid = r.ledger.residual_excitation / r.ledger.input_energy;
    const double defect = std::abs(trans + cumulative + resid - 1.0);
    const double emitted_expected = 1.0 - big_r * std::pow(big_t, flips);
    closure.add_row({b, trans, cumulative, resid, defect, emitted_expected});
    out.quantity(label("cumulative", b), cumulative);
    out.check_le(label("closure_defect", b), defect, c.thresholds.energy_defect_max);
    out.check_le(label("emitted_vs_expected", b), std::abs(trans + cumulative - emitted_expected),
                 c.thresholds.energy_defect_max);
  }
  out.tables.emplace_back("multi_echo.csv", std::move(echoes));
  out.tables.emplace_back("closure.csv", std::move(closure));
  return out;
}

ScenarioOutcome auxiliary_recall_scenario(const ScenarioConfig& c) {
  ScenarioOutcome out;
  out.scenario = "auxiliary-recall";
  const Pulse input = c.pulse.build();
  const FlipSchedule schedule = schedule_of(c, 1);
  const double b = std::abs(beta(c.physics));
  const AuxiliaryRecallReport rep =
      auxiliary_recall_check(c.physics, c.grid.build(c.physics), input, schedule.times().front());
  const double expected_without = std::exp(-2.0 * kPi * b) * -std::expm1(-2.0 * kPi * b);

  CsvTable t({"beta", "overlap_with_ideal", "recalled", "residual", "recalled_without",
              "residual_without", "residual_without_expected"});
  t.add_row({b, rep.overlap_with_ideal, rep.recalled_fraction, rep.residual_fraction,
             rep.recalled_fraction_without, rep.residual_fraction_without, expected_without});
  out.quantity("overlap_with_ideal", rep.overlap_with_ideal);
  out.quantity("recalled_fraction", rep.recalled_fraction);
  out.quantity("residual_fraction_without", rep.residual_fraction_without);
  out.check_le("residual_fraction", rep.residual_fraction, c.thresholds.residual_max);
  out.check_le("residual_without_rel_error", relative_error(rep.residual_fraction_without, expected_without),
               c.thresholds.relative_tolerance);
  out.tables.emplace_back("auxiliary_recall.csv", std::move(t));
  return out;
}

ScenarioOutcome time_reversal_scenario(const ScenarioConfig& c) {
  ScenarioOutcome out;
  out.scenario = "time-reversal";
  const Pulse input = c.pulse.build();
  const FlipSchedule schedule = schedule_of(c, 1);
  const double flip = schedule.times().front();
  const SimResult r = simulate(c.physics, c.grid.build(c.physics), input, schedule);
  const TimeInterval window = echo_window(input, flip, 1);

  const double fidelity = echo_fidelity(r, input, flip);
  const double stripped = overlap_fidelity(r, input.reversed_about(flip), window);
  out.check_ge("fidelity", fidelity, c.thresholds.fidelity_min);
  out.check_lt("phase_stripped_fidelity", stripped, fidelity);

  const double b = std::abs(beta(c.physics));
  const Pulse ideal = ideal_echo(input, c.physics, flip).scaled(-std::expm1(-2.0 * kPi * b));
  CsvTable t({"t", "out_re", "out_im", "predicted_re", "predicted_im", "out_phase",
              "predicted_phase"});
  LinePlot plot{"Echo amplitude", "t", "|E|", {{"simulated", {}, {}}, {"predicted", {}, {}}}};
  std::vector<double> ts, out_phase, pred_phase;
  std::vector<Complex> outs, preds;
  for (std::size_t n = 0; n < r.times.size(); ++n) {
    if (!window.contains(r.times[n])) continue;
    ts.push_back(r.times[n]);
    outs.push_back(r.out_series[n]);
    preds.push_back(ideal(r.times[n]));
    out_phase.push_back(std::arg(outs.back()));
    pred_phase.push_back(std::arg(preds.back()));
  }
  out_phase = unwrap(out_phase);
  pred_phase = unwrap(pred_phase);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    t.add_row({ts[i], outs[i].real(), outs[i].imag(), preds[i].real(), preds[i].imag(),
               out_phase[i], pred_phase[i]});
    plot.series[0].x.push_back(ts[i]);
    plot.series[0].y.push_back(std::abs(outs[i]));
    plot.series[1].x.push_back(ts[i]);
    plot.series[1].y.push_back(std::abs(preds[i]));
  }
  out.tables.emplace_back("time_reversal.csv", std::move(t));
  out.plots.emplace_back("time_reversal.svg", std::move(plot));
  return out;
}

// ---------------------------------------------------------------------------
// Closed-form scenarios

ScenarioOutcome analytic_scenario(const ScenarioConfig& c) {
  ScenarioOutcome out;
  out.scenario = "analytic";
  const double b = beta(c.physics);
  if (b == 0.0) config_error("scenario 'analytic' needs a nonzero beta");
  if (c.physics.eta <= 0.0) config_error("scenario 'analytic' needs physics.eta > 0");
  const Pulse input = c.pulse.build();
  const FlipSchedule schedule = schedule_of(c, 1);
  const double flip = schedule.times().front();

  // Spatial spectrum of the stored excitation.
  const auto k = uniform_axis(c.sweep.k_max, static_cast<std::size_t>(c.sweep.k_points));
  const KSpaceState state = kspace_at_flip(input, c.physics, k, flip);
  const double stored = state.excitation(c.physics) / pulse_energy(input);
  const double stored_expected = -std::expm1(-2.0 * kPi * b);
  CsvTable kt({"k", "field_re", "field_im", "field_abs", "polarization_abs"});
  for (std::size_t i = 0; i < k.size(); ++i)
    kt.add_row({k[i], state.field[i].real(), state.field[i].imag(), std::abs(state.field[i]),
                std::abs(state.polarization[i])});
  out.quantity("stored_fraction", stored);
  out.check_le("stored_fraction_rel_error", relative_error(stored, stored_expected),
               c.thresholds.relative_tolerance);

  // With the auxiliary input the stored state must emit the full predicted echo.
  const KSpaceState emitting =
      kspace_for_output(ideal_echo(input, c.physics, flip), c.physics, k, flip);
  double mismatch = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    mismatch = std::max(mismatch, std::abs(emitting.field[i] - state.field[i]));
    peak = std::max(peak, std::abs(state.field[i]));
  }
  out.check_le("matching_mismatch", mismatch / peak, c.thresholds.matching_tolerance);

  // |Gamma(iy)|^2 = pi / (y sinh(pi y)) on a log grid.
  CsvTable gt({"y", "gamma_abs_sq", "expected", "relative_error"});
  double worst = 0.0, asym = 0.0;
  const int gamma_points = 241;
  for (int i = 0; i < gamma_points; ++i) {
    const double y = 1e-3 * std::pow(5e4, static_cast<double>(i) / (gamma_points - 1));
    const Complex g = complex_gamma_imag(y);
    const double expected = kPi / (y * std::sinh(kPi * y));
    const double err = relative_error(std::norm(g), expected);
    worst = std::max(worst, err);
    asym = std::max(asym, std::abs(complex_gamma_imag(-y) - std::conj(g)));
    gt.add_row({y, std::norm(g), expected, err});
  }
  out.check_le("gamma_modulus_rel_error", worst, c.thresholds.gamma_tolerance);
  out.check_le("gamma_conjugate_asymmetry", asym, 0.0);

  // Predicted echo and its phase excursion.
  const Pulse ideal = ideal_echo(input, c.physics, flip);
  const TimeInterval window = echo_window(input, flip, 1);
  CsvTable et({"t", "input_abs", "echo_re", "echo_im", "echo_abs", "echo_phase"});
  std::vector<double> ts = linspace(window.start, window.end, 2001), phase;
  for (double t : ts) phase.push_back(std::arg(ideal(t)));
  phase = unwrap(phase);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Complex e = ideal(ts[i]);
    et.add_row({ts[i], std::abs(input(2.0 * flip - ts[i])), e.real(), e.imag(), std::abs(e), phase[i]});
  }
  const double ts0 = c.series.t_start, ts1 = c.series.t_end;
  const double measured = std::abs(std::arg(echo_phase_factor(ts1, c.physics) /
                                            echo_phase_factor(ts0, c.physics)));
  const double predicted = std::abs(phase_excursion(b, ts0, ts1));
  out.quantity("phase_excursion", predicted);
  if (predicted < kPi)
    out.check_le("phase_excursion_error", std::abs(measured - predicted), c.thresholds.phase_tolerance);
  else
    out.notes.push_back("phase excursion exceeds pi; the wrapped comparison is skipped");

  out.tables.emplace_back("kspace.csv", std::move(kt));
  out.tables.emplace_back("gamma.csv", std::move(gt));
  out.tables.emplace_back("echo_prediction.csv", std::move(et));
  return out;
}

ScenarioOutcome network_scenario(const ScenarioConfig& c) {
  ScenarioOutcome out;
  out.scenario = "network";
  NetworkSpec spec{c.network.cells, c.network.flips,
                   SplitterParams::from_beta(c.network.beta_per_cell, c.network.phase)};
  const EchoReport rep = echo_report(spec, spec.num_flips);
  const NetworkAmplitudes amps = propagate_network(spec);
  const double b = spec.splitter.beta_per_cell;

  CsvTable t({"p", "closed_form", "path_sum", "propagated", "printed_formula", "paths"});
  double oracle_gap = 0.0, propagated_gap = 0.0, printed_gap = 0.0;
  bool enumerated = true;
  for (int p = 1; p <= spec.num_flips; ++p) {
    const double closed = rep.echoes[static_cast<std::size_t>(p - 1)];
    double path = NAN, paths = static_cast<double>(count_echo_paths(spec.cells, p));
    if (count_echo_paths(spec.cells, p) <= c.network.path_budget) {
      const PathSum ps = path_sum_oracle(spec, p, c.network.path_budget);
      path = ps.energy();
      paths = static_cast<double>(ps.paths);
      oracle_gap = std::max(oracle_gap, std::abs(path - closed));
    } else {
      enumerated = false;
    }
    const double prop = std::norm(amps.echoes[static_cast<std::size_t>(p - 1)]);
    const double printed = printed_multiswitch_formula(b, spec.cells, p);
    propagated_gap = std::max(propagated_gap, std::abs(prop - closed));
    printed_gap = std::max(printed_gap, std::abs(printed - closed));
    t.add_row({static_cast<double>(p), closed, path, prop, printed, paths});
  }
  if (!enumerated)
    out.notes.push_back("some echoes exceed network.path_budget and were not enumerated");
  out.quantity("transmitted", rep.transmitted);
  out.quantity("cumulative", rep.cumulative);
  out.quantity("residual", rep.residual);
  out.quantity("printed_formula_max_deviation", printed_gap);
  out.check_le("path_sum_vs_closed_form", oracle_gap, c.thresholds.oracle_tolerance);
  out.check_le("propagated_vs_closed_form", propagated_gap, c.thresholds.oracle_tolerance);
  out.check_le("unitarity_closure", rep.closure_defect, c.thresholds.closure_tolerance);
  out.tables.emplace_back("network.csv", std::move(t));
  return out;
}

ScenarioOutcome reproduce_fig4(const ScenarioConfig& c) {
  ScenarioOutcome out;
  out.scenario = "fig4";
  const int K = c.sweep.echoes;
  if (c.sweep.beta_min < 0.0 || c.sweep.beta_max < c.sweep.beta_min)
    config_error("fig4 needs 0 <= sweep.beta_min <= sweep.beta_max");
  const auto betas = linspace(c.sweep.beta_min, c.sweep.beta_max, c.sweep.beta_points);

  std::vector<std::string> headers{"beta"};
  for (int k = 1; k <= K; ++k) headers.push_back("e_" + std::to_string(k));
  headers.push_back("transmitted");
  headers.push_back("cumulative");
  CsvTable t(headers);
  LinePlot plot{"Echo efficiency with repeated switching", "beta", "energy fraction", {}};
  for (int k = 1; k <= K; ++k) plot.series.push_back({"echo " + std::to_string(k), {}, {}});
  plot.series.push_back({"transmitted", {}, {}});
  plot.series.push_back({"cumulative", {}, {}});

  double closure = 0.0, min_increment = INFINITY, transmitted_gap = 0.0;
  for (double b : betas) {
    std::vector<double> row{b};
    double cumulative = 0.0;
    for (int k = 1; k <= K; ++k) {
      const double e = multiswitch_echo_energy(b, k);
      min_increment = std::min(min_increment, e);
      cumulative += e;
      row.push_back(e);
    }
    const double trans = single_memory_ledger(b).transmitted;
    transmitted_gap = std::max(transmitted_gap, std::abs(trans - std::exp(-2.0 * kPi * b)));
    const double tail = -std::expm1(-2.0 * kPi * b) * std::pow(trans, K);
    closure = std::max(closure, std::abs(trans + cumulative + tail - 1.0));
    row.push_back(trans);
    row.push_back(cumulative);
    for (std::size_t s = 0; s + 1 < row.size(); ++s) {
      plot.series[s].x.push_back(b);
      plot.series[s].y.push_back(row[s + 1]);
    }
    t.add_row(std::move(row));
  }
  const double spot = multiswitch_echo_energy(c.sweep.spot_beta, 1);
  out.quantity(label("e_1", c.sweep.spot_beta), spot);
  out.check_ge(label("e_1", c.sweep.spot_beta), spot, c.thresholds.spot_efficiency_min);
  out.check_le("transmitted_column_error", transmitted_gap, 0.0);
  out.check_le("closure_with_geometric_tail", closure, c.thresholds.closure_tolerance);
  out.check_ge("min_partial_sum_increment", min_increment, 0.0);
  out.tables.emplace_back("fig4.csv", std::move(t));
  out.plots.emplace_back("fig4.svg", std::move(plot));
  return out;
}

ScenarioOutcome reproduce_fig5(const ScenarioConfig& c) {
  ScenarioOutcome out;
  out.scenario = "fig5";
  if (c.sweep.d_min < 0.0 || c.sweep.d_max <= c.sweep.d_min)
    config_error("fig5 needs 0 <= sweep.d_min < sweep.d_max");
  const auto ds = linspace(c.sweep.d_min, c.sweep.d_max, c.sweep.d_points);
  std::vector<int> counts = c.sweep.echo_counts;
  std::sort(counts.begin(), counts.end());
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());
  const int p_max = counts.back();

  std::vector<std::vector<double>> e(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (int p = 1; p <= p_max; ++p) e[i].push_back(transverse_multiswitch_echo(ds[i], p));

  auto cumulative = [](double d, int P) {
    double s = 0.0;
    for (int p = 1; p <= P; ++p) s += transverse_multiswitch_echo(d, p);
    return s;
  };

  std::vector<std::string> combined_headers{"d", "e_1"};
  for (int P : counts) combined_headers.push_back("cumulative_P" + std::to_string(P));
  CsvTable combined(combined_headers);
  LinePlot plot{"Transverse broadening echo efficiency", "optical depth d", "energy fraction",
                {{"first echo", {}, {}}}};
  for (int P : counts) plot.series.push_back({"sum of " + std::to_string(P) + " echoes", {}, {}});

  for (std::size_t i = 0; i < ds.size(); ++i) {
    std::vector<double> row{ds[i], e[i][0]};
    plot.series[0].x.push_back(ds[i]);
    plot.series[0].y.push_back(e[i][0]);
    for (std::size_t j = 0; j < counts.size(); ++j) {
      double s = 0.0;
      for (int p = 1; p <= counts[j]; ++p) s += e[i][static_cast<std::size_t>(p - 1)];
      row.push_back(s);
      plot.series[j + 1].x.push_back(ds[i]);
      plot.series[j + 1].y.push_back(s);
    }
    combined.add_row(std::move(row));
  }
  out.tables.emplace_back("fig5.csv", std::move(combined));

  for (int P : counts) {
    std::vector<std::string> headers{"d"};
    for (int p = 1; p <= P; ++p) headers.push_back("e_" + std::to_string(p));
    headers.push_back("cumulative");
    CsvTable t(headers);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      std::vector<double> row{ds[i]};
      double s = 0.0;
      for (int p = 1; p <= P; ++p) {
        row.push_back(e[i][static_cast<std::size_t>(p - 1)]);
        s += row.back();
      }
      row.push_back(s);
      t.add_row(std::move(row));
    }
    out.tables.emplace_back("fig5_P" + std::to_string(P) + ".csv", std::move(t));
  }

  const auto [d1, e1] = scan_max([](double d) { return transverse_multiswitch_echo(d, 1); }, ds);
  out.quantity("e_1_max", e1);
  out.quantity("e_1_argmax_d", d1);
  out.check_le("e_1_max_vs_4_over_e2", std::abs(e1 - 4.0 * std::exp(-2.0)), c.thresholds.peak_tolerance);
  if (p_max >= 2)
    out.check_le("e_2_at_d2", transverse_multiswitch_echo(2.0, 2), c.thresholds.peak_tolerance);
  for (int P : counts) {
    const auto [dp, cp] = scan_max([&](double d) { return cumulative(d, P); }, ds);
    out.quantity("optimal_d_P" + std::to_string(P), dp);
    out.quantity("cumulative_max_P" + std::to_string(P), cp);
    if (P == p_max) {
      out.check_ge("cumulative_max_P" + std::to_string(P), cp, c.thresholds.cumulative_min);
      double first = NAN, last = NAN;
      for (std::size_t i = 0; i < ds.size(); ++i) {
        double s = 0.0;
        for (double v : e[i]) s += v;
        if (s >= c.thresholds.cumulative_min) {
          if (std::isnan(first)) first = ds[i];
          last = ds[i];
        }
      }
      out.quantity("d_first_reaching_cumulative_min", first);
      out.quantity("d_last_reaching_cumulative_min", last);
    }
  }
  out.plots.emplace_back("fig5.svg", std::move(plot));
  return out;
}

double fitted_order(const std::vector<double>& h, const std::vector<double>& error) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < std::min(h.size(), error.size()); ++i) {
    if (!(h[i] > 0.0) || !(error[i] > 0.0)) continue;
    x.push_back(-std::log(h[i]));
    y.push_back(std::log(error[i]));
  }
  if (x.size() < 2) return NAN;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return -sxy / sxx;
}

ScenarioOutcome convergence_sweep(const ScenarioConfig& c) {
  ScenarioOutcome out;
  out.scenario = "convergence";
  if (c.sweep.levels < 3) config_error("sweep.levels must be >= 3");
  if (!(c.sweep.refinement > 1.0)) config_error("sweep.refinement must be > 1");
  const Pulse input = c.pulse.build();
  const FlipSchedule schedule = schedule_of(c, 1);
  const double b = std::abs(beta(c.physics));
  const double expected = single_memory_efficiency(b);
  const TimeInterval window = echo_window(input, schedule, 1);

  std::vector<std::size_t> nz;
  for (int l = 0; l < c.sweep.levels; ++l)
    nz.push_back(static_cast<std::size_t>(
        std::llround(static_cast<double>(c.sweep.nz_base - 1) * std::pow(c.sweep.refinement, l))) + 1);
  const auto eff = parallel_map<double>(nz.size(), [&](std::size_t l) {
    GridSpec g = c.grid;
    g.nz = nz[l];
    return measure_efficiency(simulate(c.physics, g.build(c.physics), input, schedule), window);
  });

  CsvTable t({"level", "nz", "dz", "efficiency", "expected", "error"});
  std::vector<double> h, err;
  for (std::size_t l = 0; l < nz.size(); ++l) {
    const double dz = 2.0 * c.physics.z0 / static_cast<double>(nz[l] - 1);
    h.push_back(dz);
    err.push_back(relative_error(eff[l], expected));
    t.add_row({static_cast<double>(l), static_cast<double>(nz[l]), dz, eff[l], expected, err.back()});
  }
  out.tables.emplace_back("convergence.csv", std::move(t));

  if (expected == 0.0) {
    for (std::size_t l = 0; l < err.size(); ++l)
      out.check_le("error_level" + std::to_string(l), err[l], c.thresholds.vacuum_tolerance);
    out.notes.push_back("beta = 0: no order is fitted");
    return out;
  }
  const double order = fitted_order(h, err);
  out.quantity("fitted_order", order);
  out.quantity("coarsest_error", err.front());
  out.quantity("finest_error", err.back());
  out.check_ge("fitted_order", order, c.thresholds.order_min);
  out.check_ge("coarsest_over_finest", err.back() > 0.0 ? err.front() / err.back() : INFINITY,
               c.thresholds.refinement_gain_min);
  return out;
}

ScenarioOutcome series_memories_scenario(const ScenarioConfig& c) {
  ScenarioOutcome out;
  out.scenario = "series";
  const PhysicalParams first = c.physics;
  PhysicalParams second = c.physics;
  second.eta = c.series.eta2;
  first.validate();
  second.validate();
  const double ts = c.series.t_start, te = c.series.t_end;
  if (!(ts > 0.0) || !(te > ts)) config_error("series needs 0 < series.t_start < series.t_end");

  auto phase_of = [](const PhysicalParams& p, double tau) {
    return beta(p) == 0.0 ? 0.0 : std::arg(echo_phase_factor(tau, p));
  };
  const auto taus = linspace(ts, te, c.series.samples);
  std::vector<double> p1, p2, total;
  for (double tau : taus) {
    p1.push_back(phase_of(first, tau));
    p2.push_back(phase_of(second, tau));
    total.push_back(p1.back() + p2.back());
  }
  p1 = unwrap(p1);
  p2 = unwrap(p2);
  total = unwrap(total);

  CsvTable t({"tau", "phase_first", "phase_second", "phase_total"});
  for (std::size_t i = 0; i < taus.size(); ++i) t.add_row({taus[i], p1[i], p2[i], total[i]});

  const double excursion = span_of(total);
  const double expected = 2.0 * std::abs(beta(first) + beta(second)) * std::log(te / ts);
  out.quantity("single_memory_excursion", 2.0 * std::abs(beta(first)) * std::log(te / ts));
  out.quantity("residual_excursion", excursion);
  out.quantity("expected_excursion", expected);
  out.check_le("excursion_error", std::abs(excursion - expected), c.thresholds.phase_tolerance);
  out.tables.emplace_back("series.csv", std::move(t));
  return out;
}

// ---------------------------------------------------------------------------
// Dispatch and output

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "vacuum", "single-echo", "multi-echo", "auxiliary-recall", "time-reversal", "analytic",
      "network", "fig4", "fig5", "convergence", "series"};
  return names;
}

const std::vector<std::string>& simulation_scenarios() {
  static const std::vector<std::string> names = {"vacuum", "single-echo", "multi-echo",
                                                 "auxiliary-recall", "time-reversal"};
  return names;
}

ScenarioOutcome run_scenario(const ScenarioConfig& c) {
  using Runner = ScenarioOutcome (*)(const ScenarioConfig&);
  static const std::vector<std::pair<std::string, Runner>> table = {
      {"vacuum", vacuum_scenario},
      {"single-echo", single_echo_scenario},
      {"multi-echo", multi_echo_scenario},
      {"auxiliary-recall", auxiliary_recall_scenario},
      {"time-reversal", time_reversal_scenario},
      {"analytic", analytic_scenario},
      {"network", network_scenario},
      {"fig4", reproduce_fig4},
      {"fig5", reproduce_fig5},
      {"convergence", convergence_sweep},
      {"series", series_memories_scenario},
  };
  for (const auto& [name, run] : table)
    if (name == c.scenario) return run(c);
  std::string valid;
  for (const auto& n : scenario_names()) valid += (valid.empty() ? "" : ", ") + n;
  config_error("unknown scenario '" + c.scenario + "' (valid: " + valid + ")");
}

std::vector<std::string> provenance_lines(const ScenarioConfig& c) {
  std::vector<std::string> lines{"gemsim " GEMSIM_VERSION, "scenario: " + c.scenario};
  for (const auto& [k, v] : c.entries) lines.push_back(k + " = " + v);
  if (c.sweep.betas.empty()) lines.push_back("beta: " + format_number(beta(c.physics)));
  return lines;
}

namespace {

std::string short_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void print_summary(const ScenarioOutcome& o, std::ostream& os) {
  os << "scenario " << o.scenario << "\n";
  for (const auto& [name, v] : o.quantities) os << "  " << name << " = " << short_number(v) << "\n";
  for (const auto& n : o.notes) os << "  note: " << n << "\n";
  std::size_t passed = 0;
  for (const auto& ch : o.checks) {
    passed += ch.pass ? 1 : 0;
    os << "  " << (ch.pass ? "PASS" : "FAIL") << "  " << ch.name << " = " << short_number(ch.value)
       << " " << ch.relation << " " << short_number(ch.limit) << "\n";
  }
  os << "result: " << (o.all_pass() ? "PASS" : "FAIL") << " (" << passed << "/" << o.checks.size()
     << " checks)\n";
}

void write_outcome(const ScenarioOutcome& o, const ScenarioConfig& c, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create output directory '" + dir + "': " + ec.message());
  const auto prov = provenance_lines(c);
  for (const auto& [file, table] : o.tables) {
    CsvTable copy = table;
    for (const auto& line : prov) copy.add_provenance(line);
    copy.write((std::filesystem::path(dir) / file).string());
  }
  for (const auto& [file, plot] : o.plots) plot.write((std::filesystem::path(dir) / file).string());
  std::ofstream s(std::filesystem::path(dir) / "summary.txt", std::ios::binary);
  if (!s) fail(ErrorCode::kIo, "cannot write summary.txt in '" + dir + "'");
  print_summary(o, s);
}

}  // namespace gem
