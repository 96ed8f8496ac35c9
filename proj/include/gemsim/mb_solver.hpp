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

// Time-domain Maxwell-Bloch solver for a gradient-echo memory in the frame
// moving at the speed of light:
//
//   d/dt alpha(z,t) = -(gamma + i s(t) eta z) alpha + i g E
//   d/dz E(z,t)     = i g N alpha,          E(-z0, t) = boundary(t)
//
// s(t) = +1 initially and negates at every scheduled flip. The detuning
// rotation is applied exactly (integrating factor); the coupling is advanced
// with classic RK4 stages, and E is rebuilt from alpha at every stage by a
// cumulative trapezoid in z.
//
// With this normalization the energy bookkeeping is
//   int |E_in|^2 dt = int |E_out|^2 dt + N int |alpha(z, t_end)|^2 dz   (gamma = 0).

#ifndef GEMSIM_MB_SOLVER_HPP
#define GEMSIM_MB_SOLVER_HPP

#include <optional>
#include <vector>

#include "gemsim/core_model.hpp"

namespace gem {

struct SolverOptions {
  /// Run even if the input fails validate_spectral_coverage().
  bool allow_coverage_violation = false;
  /// Extra snapshot times (snapped to the grid). Flip times are always included.
  std::vector<double> snapshot_times;
};

struct Snapshot {
  double t = 0.0;
  std::vector<Complex> alpha;
  std::vector<Complex> field;
};

struct EnergyLedger {
  double input_energy = 0.0;
  /// Output energy before the first flip.
  double transmitted_energy = 0.0;
  /// Output energy between flip k and flip k+1 (or the end of the grid).
  std::vector<double> echo_energies;
  /// N * int |alpha(z, t_max)|^2 dz, in field-energy units.
  double residual_excitation = 0.0;
};

struct SimResult {
  PhysicalParams params;
  Grid grid;
  std::vector<double> times;
  std::vector<Complex> out_series;  ///< E(+z0, t_n)
  std::vector<Complex> in_series;   ///< E(-z0, t_n) as injected
  std::vector<double> flip_times;   ///< snapped to the grid
  std::vector<double> flip_snap_distance;
  std::vector<Snapshot> snapshots;  ///< in time order
  std::vector<Complex> final_alpha;
  EnergyLedger ledger;

  /// Snapshot taken closest to `t`; throws if there are none.
  const Snapshot& snapshot_near(double t) const;
};

SimResult simulate(const PhysicalParams& params, const Grid& grid, const Pulse& input,
                   const FlipSchedule& schedule,
                   const std::optional<Pulse>& auxiliary = std::nullopt,
                   const SolverOptions& options = {});

/// Trapezoid integral of g(t_n) over the grid samples inside `window`.
double integrate_series(const std::vector<double>& times, const std::vector<double>& values,
                        TimeInterval window);

/// Output energy inside `window` divided by the injected input energy.
double measure_efficiency(const SimResult& result, TimeInterval window);

/// Predicted emission interval of the k-th echo (k >= 1): the support of the
/// previous emission (the input for k = 1) mirrored about the k-th flip.
TimeInterval echo_window(const Pulse& input, const FlipSchedule& schedule, int k);
TimeInterval echo_window(const Pulse& input, double flip_time, int k);

/// |<out, ref>|^2 / (|out|^2 |ref|^2) over `window`, on the result's time grid.
double overlap_fidelity(const SimResult& result, const Pulse& reference,
                        TimeInterval window);

/// Normalized overlap of the simulated first echo with the ideal time-reversed echo.
double echo_fidelity(const SimResult& result, const Pulse& input, double flip_time);

struct BalanceReport {
  EnergyLedger ledger;
  /// |input - transmitted - sum(echoes) - residual| / input
  double defect = 0.0;
};

BalanceReport energy_balance(const SimResult& result);

/// Excitation fractions at or below this level count as the ground state.
inline constexpr double kGroundStateFraction = 1e-4;

struct AuxiliaryRecallReport {
  double beta = 0.0;
  /// Overlap of the realized output with the full-amplitude ideal echo.
  double overlap_with_ideal = 0.0;
  /// Output energy after the flip relative to the input energy.
  double recalled_fraction = 0.0;
  double residual_fraction = 0.0;
  /// Same quantities without the auxiliary pulse.
  double residual_fraction_without = 0.0;
  double recalled_fraction_without = 0.0;
};

AuxiliaryRecallReport auxiliary_recall_check(const PhysicalParams& params,
                                             const Grid& grid, const Pulse& input,
                                             double flip_time,
                                             const SolverOptions& options = {});

}  // namespace gem

#endif  // GEMSIM_MB_SOLVER_HPP
