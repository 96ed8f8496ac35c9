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

#include "gemsim/mb_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gemsim/analytic.hpp"
#include "gemsim/error.hpp"

namespace gem {

namespace {

constexpr Complex kI{0.0, 1.0};

// Coupling stage: E is rebuilt from alpha by a cumulative trapezoid starting
// at the boundary value, and the RK right-hand side is i g E. Returns E(+z0).
class CouplingStage {
 public:
  CouplingStage(const PhysicalParams& params, const Grid& grid)
      : step_(kI * params.g * params.N * grid.dz() * 0.5), ig_(kI * params.g) {}

  Complex operator()(const std::vector<Complex>& alpha, Complex boundary,
                     std::vector<Complex>& rhs, std::vector<Complex>* field = nullptr) const {
    const std::size_t nz = alpha.size();
    Complex e = boundary;
    rhs[0] = ig_ * e;
    if (field) (*field)[0] = e;
    for (std::size_t j = 1; j < nz; ++j) {
      e += step_ * (alpha[j - 1] + alpha[j]);
      rhs[j] = ig_ * e;
      if (field) (*field)[j] = e;
    }
    return e;
  }

 private:
  Complex step_;
  Complex ig_;
};

double trapezoid(const std::vector<double>& v, double h, std::size_t first, std::size_t last) {
  if (last <= first) return 0.0;
  double sum = 0.5 * (v[first] + v[last]);
  for (std::size_t n = first + 1; n < last; ++n) sum += v[n];
  return sum * h;
}

}  // namespace

const Snapshot& SimResult::snapshot_near(double t) const {
  if (snapshots.empty()) fail(ErrorCode::kOutOfRange, "result holds no snapshots");
  auto best = std::min_element(snapshots.begin(), snapshots.end(),
                               [t](const Snapshot& a, const Snapshot& b) {
                                 return std::abs(a.t - t) < std::abs(b.t - t);
                               });
  return *best;
}

SimResult simulate(const PhysicalParams& params, const Grid& grid, const Pulse& input,
                   const FlipSchedule& schedule, const std::optional<Pulse>& auxiliary,
                   const SolverOptions& options) {
  params.validate();
  grid.validate(params.eta);
  const double z_tol = 1e-9 * params.z0;
  if (std::abs(grid.z_min + params.z0) > z_tol || std::abs(grid.z_max - params.z0) > z_tol)
    fail(ErrorCode::kInvalidArgument, "grid must span [-z0, +z0] of the sample");
  schedule.validate_within(grid);
  if (!options.allow_coverage_violation && !input.is_null()) {
    const CoverageReport cov = validate_spectral_coverage(params, input);
    if (!cov.ok)
      fail(ErrorCode::kInvalidArgument, "input fails the spectral coverage check: " + cov.message);
  }

  const std::size_t nz = grid.nz;
  const std::size_t nt = grid.nt;
  const double h = grid.dt();

  SimResult res;
  res.params = params;
  res.grid = grid;
  res.times.resize(nt);
  for (std::size_t n = 0; n < nt; ++n) res.times[n] = grid.t(n);
  res.out_series.resize(nt);
  res.in_series.resize(nt);

  // Flips act between two steps: the step starting at grid index n uses the
  // polarity set by every flip snapped to an index <= n.
  std::vector<std::size_t> flip_index;
  for (double tf : schedule.times()) {
    const std::size_t n = grid.nearest_time_index(tf);
    if (!flip_index.empty() && n <= flip_index.back())
      fail(ErrorCode::kInvalidArgument, "two flips snap to the same grid time; refine the grid");
    flip_index.push_back(n);
    res.flip_times.push_back(grid.t(n));
    res.flip_snap_distance.push_back(std::abs(grid.t(n) - tf));
  }

  std::vector<std::size_t> snap_index = flip_index;
  for (double ts : options.snapshot_times) {
    if (ts < grid.t_min || ts > grid.t_max)
      fail(ErrorCode::kOutOfRange, "snapshot time outside the grid");
    snap_index.push_back(grid.nearest_time_index(ts));
  }
  std::sort(snap_index.begin(), snap_index.end());
  snap_index.erase(std::unique(snap_index.begin(), snap_index.end()), snap_index.end());

  auto boundary = [&](double t) {
    Complex b = input(t);
    if (auxiliary) b += (*auxiliary)(t);
    return b;
  };

  // Exact detuning rotation over half and full steps for both polarities.
  std::vector<Complex> rot_half[2], rot_full[2];
  for (int p = 0; p < 2; ++p) {
    const double s = p == 0 ? 1.0 : -1.0;
    rot_half[p].resize(nz);
    rot_full[p].resize(nz);
    for (std::size_t j = 0; j < nz; ++j) {
      const Complex rate = -(params.gamma + kI * s * params.eta * grid.z(j));
      rot_half[p][j] = std::exp(rate * (0.5 * h));
      rot_full[p][j] = std::exp(rate * h);
    }
  }

  const CouplingStage coupling(params, grid);
  std::vector<Complex> alpha(nz), stage(nz), k(nz), acc(nz), field(nz);
  std::size_t next_flip = 0;
  std::size_t next_snap = 0;
  int polarity = 0;

  for (std::size_t n = 0; n < nt; ++n) {
    while (next_flip < flip_index.size() && flip_index[next_flip] == n) {
      polarity ^= 1;
      ++next_flip;
    }
    const double t = res.times[n];
    const Complex b0 = boundary(t);
    const bool take_snapshot = next_snap < snap_index.size() && snap_index[next_snap] == n;
    res.in_series[n] = b0;
    res.out_series[n] = coupling(alpha, b0, k, take_snapshot ? &field : nullptr);
    if (take_snapshot) {
      res.snapshots.push_back({t, alpha, field});
      ++next_snap;
    }
    if (n + 1 == nt) break;

    const auto& rh = rot_half[polarity];
    const auto& rf = rot_full[polarity];
    const Complex b_mid = boundary(t + 0.5 * h);
    const Complex b_end = boundary(res.times[n + 1]);

    // Integrating-factor RK4: stage values live in the frame rotated back to t_n.
    for (std::size_t j = 0; j < nz; ++j) {
      acc[j] = rf[j] * k[j];
      stage[j] = rh[j] * (alpha[j] + (0.5 * h) * k[j]);
    }
    coupling(stage, b_mid, k);
    for (std::size_t j = 0; j < nz; ++j) {
      acc[j] += 2.0 * rh[j] * k[j];
      stage[j] = rh[j] * alpha[j] + (0.5 * h) * k[j];
    }
    coupling(stage, b_mid, k);
    for (std::size_t j = 0; j < nz; ++j) {
      acc[j] += 2.0 * rh[j] * k[j];
      stage[j] = rf[j] * alpha[j] + h * rh[j] * k[j];
    }
    coupling(stage, b_end, k);
    for (std::size_t j = 0; j < nz; ++j)
      alpha[j] = rf[j] * alpha[j] + (h / 6.0) * (acc[j] + k[j]);
  }
  res.final_alpha = alpha;

  // Energy ledger.
  std::vector<double> in_power(nt), out_power(nt);
  for (std::size_t n = 0; n < nt; ++n) {
    in_power[n] = std::norm(res.in_series[n]);
    out_power[n] = std::norm(res.out_series[n]);
  }
  EnergyLedger& ledger = res.ledger;
  ledger.input_energy = trapezoid(in_power, h, 0, nt - 1);
  const std::size_t first_flip = flip_index.empty() ? nt - 1 : flip_index.front();
  ledger.transmitted_energy = trapezoid(out_power, h, 0, first_flip);
  for (std::size_t f = 0; f < flip_index.size(); ++f) {
    const std::size_t end = f + 1 < flip_index.size() ? flip_index[f + 1] : nt - 1;
    ledger.echo_energies.push_back(trapezoid(out_power, h, flip_index[f], end));
  }
  std::vector<double> alpha_power(nz);
  for (std::size_t j = 0; j < nz; ++j) alpha_power[j] = std::norm(alpha[j]);
  ledger.residual_excitation = params.N * trapezoid(alpha_power, grid.dz(), 0, nz - 1);
  return res;
}

double integrate_series(const std::vector<double>& times, const std::vector<double>& values,
                        TimeInterval window) {
  double sum = 0.0;
  for (std::size_t n = 0; n + 1 < times.size(); ++n) {
    if (times[n] < window.start || times[n + 1] > window.end) continue;
    sum += 0.5 * (values[n] + values[n + 1]) * (times[n + 1] - times[n]);
  }
  return sum;
}

double measure_efficiency(const SimResult& result, TimeInterval window) {
  if (!(result.ledger.input_energy > 0.0))
    fail(ErrorCode::kInvalidArgument, "measure_efficiency: input energy is zero");
  const double t0 = result.grid.t_min;
  const double t1 = result.grid.t_max;
  const double slack = 1e-9 * (t1 - t0);
  if (window.start < t0 - slack || window.end > t1 + slack || window.end < window.start)
    fail(ErrorCode::kOutOfRange, "measure_efficiency: window must lie inside the grid");
  std::vector<double> power(result.out_series.size());
  for (std::size_t n = 0; n < power.size(); ++n) power[n] = std::norm(result.out_series[n]);
  return integrate_series(result.times, power, window) / result.ledger.input_energy;
}

TimeInterval echo_window(const Pulse& input, const FlipSchedule& schedule, int k) {
  if (k < 1) fail(ErrorCode::kInvalidArgument, "echo_window: k must be >= 1");
  if (static_cast<std::size_t>(k) > schedule.size()) {
    std::ostringstream msg;
    msg << "echo_window: echo " << k << " requested but only " << schedule.size()
        << " flip(s) scheduled";
    fail(ErrorCode::kOutOfRange, msg.str());
  }
  TimeInterval w = input.support();
  for (int i = 0; i < k; ++i) {
    const double f = schedule.times()[static_cast<std::size_t>(i)];
    w = {2.0 * f - w.end, 2.0 * f - w.start};
  }
  return w;
}

TimeInterval echo_window(const Pulse& input, double flip_time, int k) {
  return echo_window(input, FlipSchedule({flip_time}), k);
}

double overlap_fidelity(const SimResult& result, const Pulse& reference, TimeInterval window) {
  Complex cross{};
  double out_energy = 0.0;
  double ref_energy = 0.0;
  const auto& t = result.times;
  for (std::size_t n = 0; n < t.size(); ++n) {
    if (t[n] < window.start || t[n] > window.end) continue;
    const Complex o = result.out_series[n];
    const Complex r = reference(t[n]);
    cross += o * std::conj(r);
    out_energy += std::norm(o);
    ref_energy += std::norm(r);
  }
  if (!(out_energy > 0.0) || !(ref_energy > 0.0))
    fail(ErrorCode::kNumerical, "overlap_fidelity: zero-energy signal in the window");
  return std::min(1.0, std::norm(cross) / (out_energy * ref_energy));
}

double echo_fidelity(const SimResult& result, const Pulse& input, double flip_time) {
  const Pulse ideal = ideal_echo(input, result.params, flip_time);
  TimeInterval w = echo_window(input, flip_time, 1);
  w.start = std::max(w.start, flip_time);
  w.end = std::min(w.end, result.grid.t_max);
  if (!(w.end > w.start)) fail(ErrorCode::kOutOfRange, "echo_fidelity: echo window is empty");
  return overlap_fidelity(result, ideal, w);
}

BalanceReport energy_balance(const SimResult& result) {
  BalanceReport r;
  r.ledger = result.ledger;
  const auto& l = r.ledger;
  double out = l.transmitted_energy + l.residual_excitation;
  for (double e : l.echo_energies) out += e;
  r.defect = l.input_energy > 0.0 ? std::abs(l.input_energy - out) / l.input_energy : 0.0;
  return r;
}

AuxiliaryRecallReport auxiliary_recall_check(const PhysicalParams& params, const Grid& grid,
                                             const Pulse& input, double flip_time,
                                             const SolverOptions& options) {
  AuxiliaryRecallReport r;
  r.beta = beta(params);
  const FlipSchedule schedule({flip_time});
  const Pulse aux = required_auxiliary(input, params, flip_time);
  const SimResult plain = simulate(params, grid, input, schedule, std::nullopt, options);
  const SimResult helped = simulate(params, grid, input, schedule, aux, options);

  // Both runs are normalized to the energy of the stored input pulse alone.
  const double stored = plain.ledger.input_energy;
  if (!(stored > 0.0)) fail(ErrorCode::kInvalidArgument, "auxiliary_recall_check: null input");
  const TimeInterval after{plain.flip_times.front(), grid.t_max};
  r.recalled_fraction = measure_efficiency(helped, after) * helped.ledger.input_energy / stored;
  r.recalled_fraction_without = measure_efficiency(plain, after);
  r.residual_fraction = helped.ledger.residual_excitation / stored;
  r.residual_fraction_without = plain.ledger.residual_excitation / stored;
  r.overlap_with_ideal =
      overlap_fidelity(helped, ideal_echo(input, params, flip_time), after);
  return r;
}

}  // namespace gem
