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

// Beamsplitter picture of gradient-echo memories.
//
// Each storage or retrieval stage of one (sub-)memory acts on two modes, the
// travelling light and the stored polariton, as a lossless two-port splitter
// with amplitude transmission t = e^{-beta pi} (light stays light, polariton
// stays polariton) and reflection r = sqrt(1 - e^{-2 beta pi}) (absorption or
// emission).
//
// A network is M cells in series along the light path (M = 1 is a plain
// gradient echo, large M with thin cells models transverse broadening),
// operated over 1 + F stages: stage 0 stores the input, and stage j >= 1
// follows the j-th polarity flip. Light leaving the last cell during stage 0
// is the transmitted pulse; during stage j it is the j-th echo.

#ifndef GEMSIM_BS_NETWORK_HPP
#define GEMSIM_BS_NETWORK_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace gem {

enum class ReflectionPhase {
  kSymmetric,          ///< [[t, i r], [i r, t]]
  kRealAntisymmetric,  ///< [[t, -r], [r, t]]
};

struct SplitterParams {
  double beta_per_cell = 0.0;
  double t_amp = 1.0;
  double r_amp = 0.0;
  ReflectionPhase phase = ReflectionPhase::kSymmetric;

  /// Unitary splitter for one cell; throws unless beta >= 0 and finite.
  static SplitterParams from_beta(double beta,
                                  ReflectionPhase phase = ReflectionPhase::kSymmetric);

  std::complex<double> absorb() const;  ///< light -> polariton
  std::complex<double> emit() const;    ///< polariton -> light
};

struct NetworkSpec {
  int cells = 1;
  int num_flips = 1;
  SplitterParams splitter;

  void validate() const;
};

// --- closed forms -----------------------------------------------------------

/// (1 - e^{-2 beta pi})^2
double single_memory_efficiency(double beta);

struct SingleMemoryLedger {
  double transmitted = 1.0;
  double echo = 0.0;
  double residual = 0.0;
};

/// (e^{-2 beta pi}, (1 - e^{-2 beta pi})^2, e^{-2 beta pi} (1 - e^{-2 beta pi}))
SingleMemoryLedger single_memory_ledger(double beta);

/// M^2 (1 - e^{-2 beta pi})^2 e^{-2 beta pi (M - 1)}
double transverse_efficiency(double beta, int cells);

/// d^2 e^{-d}, the many-thin-cell limit of transverse_efficiency with d = 2 beta pi M.
double thin_limit_efficiency(double d);

/// Energy of the k-th echo of a single memory flipped repeatedly:
/// (1 - e^{-2 beta pi})^2 e^{-2 beta pi (k - 1)}
double multiswitch_echo_energy(double beta, int k);

/// Energy of the p-th echo of M cells in series, exact for finite M:
///   | sum_{q=1}^{min(p,M)} C(p-1, q-1) C(M, q) (-R)^q t^{M+p-2q} |^2,
/// with R = 1 - e^{-2 beta pi} and t = e^{-beta pi}.
double finite_cell_echo_energy(double beta, int cells, int p);

/// Thin-cell limit at optical depth d:
///   e_p = e^{-d} | sum_{k=1}^{p} C(p-1, k-1) (-d)^k / k! |^2.
/// Exact integer binomials for p <= 20; beyond that the sum is evaluated as
/// -(d/p) L_{p-1}^{(1)}(d) by the Laguerre recurrence, which avoids the
/// cancellation of the alternating series.
double transverse_multiswitch_echo(double d, int p);

/// The finite-M multiswitch expression exactly as printed in the source
/// analysis, t^{M+p} |sum C(p-1,k-1) (1/k!) (-r^2/t^2)^k|^2 with
/// r = 1 - e^{-2 beta pi} and t = e^{-beta pi}. Kept only to document how far
/// it is from the path sum.
double printed_multiswitch_formula(double beta, int cells, int p);

// --- path-sum oracle ----------------------------------------------------------

inline constexpr std::uint64_t kDefaultPathBudget = 10'000'000;

struct PathSum {
  std::complex<double> amplitude;
  std::uint64_t paths = 0;

  double energy() const { return std::norm(amplitude); }
};

/// Number of distinct paths from the input port to the p-th echo port.
std::uint64_t count_echo_paths(int cells, int p);

/// Enumerates every path from the input port to the p-th echo port and sums
/// the products of the splitter amplitudes met along the way. Subtrees are
/// evaluated in parallel and reduced in a fixed order, so the result is
/// bitwise reproducible. Throws Error(kBudgetExceeded) when the path count
/// exceeds `budget`.
PathSum path_sum_oracle(const NetworkSpec& spec, int p,
                        std::uint64_t budget = kDefaultPathBudget);

/// Stage-by-stage propagation of the amplitudes through the whole network.
struct NetworkAmplitudes {
  std::complex<double> transmitted;
  std::vector<std::complex<double>> echoes;             ///< one per flip
  std::vector<std::complex<double>> final_polaritons;   ///< one per cell
  double residual_energy = 0.0;
};

NetworkAmplitudes propagate_network(const NetworkSpec& spec);

// --- reports --------------------------------------------------------------

struct EchoReport {
  std::vector<double> echoes;  ///< e_1 .. e_P
  double transmitted = 0.0;
  double residual = 0.0;       ///< 1 - transmitted - sum(echoes)
  double cumulative = 0.0;     ///< sum(echoes)
  /// |transmitted + sum(echoes) + residual excitation - 1| with every term
  /// taken from propagate_network.
  double closure_defect = 0.0;
};

inline constexpr double kUnitarityTolerance = 1e-12;

/// Per-echo energy fractions for P <= spec.num_flips echoes. Throws
/// Error(kNumerical) if the network fails unitarity closure.
EchoReport echo_report(const NetworkSpec& spec, int max_echo);

/// Thin-cell transverse memory at optical depth d, echoes 1..P.
EchoReport thin_limit_report(double d, int max_echo);

}  // namespace gem

#endif  // GEMSIM_BS_NETWORK_HPP
