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

// Domain types shared by the solver, the closed-form solutions and the
// experiment harness: physical parameters, input pulses, the space-time grid
// and the schedule of detuning flips.

#ifndef GEMSIM_CORE_MODEL_HPP
#define GEMSIM_CORE_MODEL_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace gem {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Ensemble and sample parameters in dimensionless units (defaults: eta = 1).
///
/// The sample spans [-z0, +z0]. The sign of `eta` selects the orientation of
/// the detuning gradient; a memory with eta < 0 mirrors the phase response of
/// one with eta > 0 while absorbing identically.
struct PhysicalParams {
  double g = 1.0;      ///< atomic coupling strength
  double N = 0.0;      ///< atomic density
  double eta = 1.0;    ///< detuning gradient, detuning at z is eta * z
  double gamma = 0.0;  ///< excited-state decay rate
  double z0 = 60.0;    ///< sample half-length

  /// Throws Error(kInvalidArgument) when any field is out of its domain.
  void validate() const;

  /// Largest detuning present in the sample, |eta| * z0.
  double detuning_span() const;
};

/// Absorption parameter g^2 N / eta. Negative when the gradient is reversed.
double beta(const PhysicalParams& params);

struct TimeInterval {
  double start = 0.0;
  double end = 0.0;

  double length() const { return end - start; }
  bool contains(double t) const { return t >= start && t <= end; }
  bool contains(const TimeInterval& other) const {
    return other.start >= start && other.end <= end;
  }
};

/// Complex slowly varying envelope with a finite support window.
///
/// Pulses are immutable; derived pulses share the underlying envelope. The
/// envelope reads as exactly zero outside the support.
class Pulse {
 public:
  using Envelope = std::function<Complex(double)>;

  /// The null pulse: zero everywhere, empty support.
  Pulse() = default;
  Pulse(Envelope envelope, TimeInterval support, double bandwidth);

  Complex operator()(double t) const;

  const TimeInterval& support() const { return support_; }
  double bandwidth() const { return bandwidth_; }
  bool is_null() const { return !envelope_; }

  /// Same pulse multiplied by a complex constant.
  Pulse scaled(Complex factor) const;
  /// Same pulse delayed by `dt`.
  Pulse shifted(double dt) const;
  /// Envelope mirrored about `t_mirror`: result(t) = this(2 t_mirror - t).
  Pulse reversed_about(double t_mirror) const;
  /// Envelope multiplied by a modulation function of time (support unchanged).
  Pulse modulated(std::function<Complex(double)> factor) const;
  /// Pulse carrying e^{i omega t}, i.e. spectral content displaced by omega.
  Pulse with_carrier(double omega) const;

  friend Pulse operator+(const Pulse& a, const Pulse& b);

 private:
  std::shared_ptr<const Envelope> envelope_;
  TimeInterval support_{};
  double bandwidth_ = 0.0;
};

/// Envelope values below this magnitude count as zero.
inline constexpr double kEnvelopeFloor = 1e-12;

/// amplitude * exp(-(t - center)^2 / (2 sigma^2)) on [center - 5 sigma, center + 5 sigma];
/// bandwidth 1/sigma.
Pulse gaussian_pulse(double center, double sigma, Complex amplitude);

/// amplitude * cos^2(pi (t - center) / (2 half_width)) on [center - half_width, center + half_width].
/// The bandwidth is the 1/e half-width of the spectral amplitude, 3.709 / half_width.
Pulse raised_cosine_pulse(double center, double half_width, Complex amplitude);

/// Samples used by pulse_energy() unless overridden.
inline constexpr std::size_t kEnergyQuadratureSamples = 20001;

/// Integral of |envelope|^2 over the support by the composite trapezoidal rule.
double pulse_energy(const Pulse& pulse,
                    std::size_t samples = kEnergyQuadratureSamples);

/// Outcome of the spectral-coverage check. Never throws.
struct CoverageReport {
  bool ok = false;
  /// bandwidth * max(|beta|, 1) / (|eta| z0); must not exceed 0.1.
  double optical_depth_ratio = 0.0;
  /// 5 * bandwidth / (|eta| z0): significant spectral content relative to the
  /// detuning window; must not exceed 1.
  double window_ratio = 0.0;
  std::string message;
};

inline constexpr double kCoverageRatioLimit = 0.1;
inline constexpr double kSignificantBandwidths = 5.0;

CoverageReport validate_spectral_coverage(const PhysicalParams& params,
                                          const Pulse& pulse);

/// Uniform space-time grid. Positions run over [z_min, z_max] = [-z0, z0].
struct Grid {
  std::size_t nz = 2;
  std::size_t nt = 2;
  double z_min = -1.0;
  double z_max = 1.0;
  double t_min = 0.0;
  double t_max = 1.0;

  static Grid for_sample(const PhysicalParams& params, std::size_t nz,
                         std::size_t nt, double t_min, double t_max);

  double dz() const { return (z_max - z_min) / static_cast<double>(nz - 1); }
  double dt() const { return (t_max - t_min) / static_cast<double>(nt - 1); }
  double z(std::size_t i) const { return z_min + dz() * static_cast<double>(i); }
  double t(std::size_t n) const { return t_min + dt() * static_cast<double>(n); }
  /// Index of the grid time closest to `time` (clamped to the grid).
  std::size_t nearest_time_index(double time) const;

  /// |eta| * max(|z_min|, |z_max|) * dt: the largest detuning phase per step.
  double stability_product(double eta) const;

  /// Throws on malformed grids and when stability_product(eta) exceeds the limit.
  void validate(double eta) const;
};

inline constexpr double kStabilityLimit = 0.1;

/// Times at which the detuning polarity reverses. The polarity starts at +1.
class FlipSchedule {
 public:
  FlipSchedule() = default;
  /// Throws Error(kInvalidArgument) unless `times` is strictly increasing.
  explicit FlipSchedule(std::vector<double> times);

  const std::vector<double>& times() const { return times_; }
  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }

  /// Throws Error(kOutOfRange) when an entry lies outside [t_min, t_max].
  void validate_within(const Grid& grid) const;

 private:
  std::vector<double> times_;
};

}  // namespace gem

#endif  // GEMSIM_CORE_MODEL_HPP
