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

// Closed-form solutions of the gradient-echo memory in the wide-band limit
// (|beta omega| << eta z0).
//
// Conventions used throughout:
//   time transform    F(omega) = int f(t) e^{-i omega t} dt,
//                     f(t) = (1/2pi) int F(omega) e^{+i omega t} d omega;
//   spatial transform E(k) = int E(z) e^{+i k z} dz.
// With these a spectral component omega is resonant with the atoms at
// z = -omega/eta before the flip and at z = +omega/eta after it.

#ifndef GEMSIM_ANALYTIC_HPP
#define GEMSIM_ANALYTIC_HPP

#include <span>
#include <vector>

#include "gemsim/complex_gamma.hpp"
#include "gemsim/core_model.hpp"

namespace gem {

struct SpectralField {
  std::vector<double> omega;  ///< uniform
  std::vector<Complex> values;

  double d_omega() const;
  /// (1/2pi) int |F|^2 d omega, trapezoid.
  double energy() const;
};

/// Uniform frequency grid [-omega_max, omega_max] with `points` samples.
std::vector<double> uniform_axis(double half_range, std::size_t points);

/// Forward transform of the pulse, by trapezoid quadrature on `time_samples`
/// points across its support.
SpectralField to_spectrum(const Pulse& pulse, std::span<const double> omega,
                          std::size_t time_samples = 4001);

/// Inverse transform evaluated at the given times.
std::vector<Complex> inverse_transform(const SpectralField& spectrum,
                                       std::span<const double> times);

/// Heaviside step with H(0) = 1/2.
double heaviside(double x);

/// Transfer factor before the flip:
///   exp(-|beta| pi H(omega + eta z)) |(omega + eta z)/(eta z0)|^{i beta}.
Complex region_a_factor(double omega, double z, const PhysicalParams& params);

/// Transfer factor after the flip, propagated back from the output face:
///   exp(-|beta| pi H(omega - eta z)) |(omega - eta z)/(eta z0)|^{-i beta}.
Complex region_b_factor(double omega, double z, const PhysicalParams& params);

SpectralField region_a_spectrum(const SpectralField& input, double z,
                                const PhysicalParams& params);
SpectralField region_b_spectrum(const SpectralField& output, double z,
                                const PhysicalParams& params);

/// Light leaving the sample before the flip: the input scaled by e^{-|beta| pi}.
Pulse transmitted_pulse(const Pulse& input, const PhysicalParams& params);

/// Field and polarization profiles in spatial-frequency space at one instant.
struct KSpaceState {
  std::vector<double> k;
  std::vector<Complex> field;         ///< E(k)
  std::vector<Complex> polarization;  ///< alpha(k) = -k E(k) / (g N)

  /// Excitation N int |alpha(z)|^2 dz = (N/2pi) int |alpha(k)|^2 dk (trapezoid).
  double excitation(const PhysicalParams& params) const;
};

/// Field at the flip produced by the input (times measured from `flip_time`):
///   E(k) = (2 beta / eta) Gamma(i beta) sinh(pi beta) e^{-pi beta/2}
///          (eta z0)^{-i beta} |k/eta|^{-1-i beta} f_in(-k/eta)   for k/eta > 0,
/// and zero for k/eta < 0. Throws for beta == 0.
KSpaceState kspace_at_flip(const Pulse& input, const PhysicalParams& params,
                           std::span<const double> k, double flip_time = 0.0);

/// Field at the flip required to emit `output` after it with the atoms left in
/// the ground state:
///   E(k) = (2 beta / eta) Gamma(-i beta) sinh(pi beta) e^{-pi beta/2}
///          (eta z0)^{i beta} |k/eta|^{-1+i beta} f_out(k/eta)   for k/eta > 0.
KSpaceState kspace_for_output(const Pulse& output, const PhysicalParams& params,
                              std::span<const double> k, double flip_time = 0.0);

/// Unit-modulus factor relating the echo to the reversed input at time tau
/// after the flip: (|eta| z0 |tau|)^{-2 i beta} Gamma(i beta) / Gamma(-i beta).
Complex echo_phase_factor(double tau, const PhysicalParams& params);

/// The echo emitted after a flip at `flip_time` when the auxiliary input is applied:
///   f_out(t) = f_in(2 t_f - t) * echo_phase_factor(t - t_f).
/// Zero at the flip instant itself. Throws for beta == 0.
Pulse ideal_echo(const Pulse& input, const PhysicalParams& params, double flip_time);

/// Auxiliary input that makes recall perfect: ideal_echo scaled by e^{-|beta| pi}.
Pulse required_auxiliary(const Pulse& input, const PhysicalParams& params,
                         double flip_time);

/// Phase swept by the echo chirp between two times after the flip: 2 beta ln(t_end/t_start).
double phase_excursion(double beta, double t_start, double t_end);

}  // namespace gem

#endif  // GEMSIM_ANALYTIC_HPP
