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

#include "gemsim/analytic.hpp"

#include <cmath>

#include "gemsim/error.hpp"

namespace gem {

namespace {

constexpr Complex kI{0.0, 1.0};

double trapezoid_weight(std::size_t n, std::size_t size) {
  return (n == 0 || n + 1 == size) ? 0.5 : 1.0;
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

double checked_beta(const PhysicalParams& params, const char* who) {
  params.validate();
  const double b = beta(params);
  if (b == 0.0)
    fail(ErrorCode::kInvalidArgument,
         std::string(who) + ": beta must be nonzero (Gamma(i beta) has a pole at 0)");
  return b;
}

// |x|^{i b} for x != 0; 1 at x == 0 (a measure-zero point).
Complex imag_power(double x, double b) {
  const double ax = std::abs(x);
  if (ax == 0.0) return {1.0, 0.0};
  return std::polar(1.0, b * std::log(ax));
}

// 2 beta sinh(pi beta) e^{-pi beta/2} / eta, written to avoid overflow at large beta.
double kspace_prefactor(double b, double eta) {
  return b * (std::exp(kPi * b / 2.0) - std::exp(-1.5 * kPi * b)) / eta;
}

}  // namespace

double SpectralField::d_omega() const {
  return omega.size() < 2 ? 0.0 : omega[1] - omega[0];
}

double SpectralField::energy() const {
  double sum = 0.0;
  for (std::size_t n = 0; n < values.size(); ++n)
    sum += trapezoid_weight(n, values.size()) * std::norm(values[n]);
  return sum * d_omega() / (2.0 * kPi);
}

std::vector<double> uniform_axis(double half_range, std::size_t points) {
  if (points < 2) fail(ErrorCode::kInvalidArgument, "uniform_axis needs >= 2 points");
  std::vector<double> axis(points);
  const double h = 2.0 * half_range / static_cast<double>(points - 1);
  for (std::size_t n = 0; n < points; ++n)
    axis[n] = -half_range + h * static_cast<double>(n);
  return axis;
}

SpectralField to_spectrum(const Pulse& pulse, std::span<const double> omega,
                          std::size_t time_samples) {
  SpectralField out;
  out.omega.assign(omega.begin(), omega.end());
  out.values.assign(omega.size(), Complex{});
  if (pulse.is_null() || pulse.support().length() <= 0.0) return out;
  if (time_samples < 2) time_samples = 2;

  const auto& s = pulse.support();
  const double h = s.length() / static_cast<double>(time_samples - 1);
  std::vector<double> t(time_samples);
  std::vector<Complex> f(time_samples);
  for (std::size_t n = 0; n < time_samples; ++n) {
    t[n] = s.start + h * static_cast<double>(n);
    f[n] = trapezoid_weight(n, time_samples) * h * pulse(t[n]);
  }
  for (std::size_t m = 0; m < omega.size(); ++m) {
    Complex acc{};
    for (std::size_t n = 0; n < time_samples; ++n)
      acc += f[n] * std::polar(1.0, -omega[m] * t[n]);
    out.values[m] = acc;
  }
  return out;
}

std::vector<Complex> inverse_transform(const SpectralField& spectrum,
                                       std::span<const double> times) {
  std::vector<Complex> out(times.size());
  const double dw = spectrum.d_omega();
  const std::size_t n_w = spectrum.values.size();
  for (std::size_t j = 0; j < times.size(); ++j) {
    Complex acc{};
    for (std::size_t m = 0; m < n_w; ++m)
      acc += trapezoid_weight(m, n_w) * spectrum.values[m] *
             std::polar(1.0, spectrum.omega[m] * times[j]);
    out[j] = acc * dw / (2.0 * kPi);
  }
  return out;
}

double heaviside(double x) {
  if (x > 0.0) return 1.0;
  if (x < 0.0) return 0.0;
  return 0.5;
}

Complex region_a_factor(double omega, double z, const PhysicalParams& params) {
  const double b = beta(params);
  const double x = omega + params.eta * z;
  const double attenuation = std::exp(-std::abs(b) * kPi * heaviside(sign_of(params.eta) * x));
  return attenuation * imag_power(x / params.detuning_span(), b);
}

Complex region_b_factor(double omega, double z, const PhysicalParams& params) {
  const double b = beta(params);
  const double x = omega - params.eta * z;
  const double attenuation = std::exp(-std::abs(b) * kPi * heaviside(sign_of(params.eta) * x));
  return attenuation * imag_power(x / params.detuning_span(), -b);
}

SpectralField region_a_spectrum(const SpectralField& input, double z,
                                const PhysicalParams& params) {
  params.validate();
  SpectralField out = input;
  for (std::size_t m = 0; m < out.values.size(); ++m)
    out.values[m] *= region_a_factor(out.omega[m], z, params);
  return out;
}

SpectralField region_b_spectrum(const SpectralField& output, double z,
                                const PhysicalParams& params) {
  params.validate();
  SpectralField out = output;
  for (std::size_t m = 0; m < out.values.size(); ++m)
    out.values[m] *= region_b_factor(out.omega[m], z, params);
  return out;
}

Pulse transmitted_pulse(const Pulse& input, const PhysicalParams& params) {
  params.validate();
  return input.scaled(std::exp(-std::abs(beta(params)) * kPi));
}

double KSpaceState::excitation(const PhysicalParams& params) const {
  if (k.size() < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t n = 0; n < k.size(); ++n)
    sum += trapezoid_weight(n, k.size()) * std::norm(polarization[n]);
  return params.N * sum * (k[1] - k[0]) / (2.0 * kPi);
}

namespace {

void fill_polarization(KSpaceState& s, const PhysicalParams& params) {
  const double coupling = params.g * params.N;
  s.polarization.resize(s.k.size());
  for (std::size_t n = 0; n < s.k.size(); ++n)
    s.polarization[n] = coupling > 0.0 ? -s.k[n] * s.field[n] / coupling : Complex{};
}

void require_positive_gradient(const PhysicalParams& params, const char* who) {
  if (params.eta <= 0.0)
    fail(ErrorCode::kInvalidArgument, std::string(who) + ": requires eta > 0");
}

}  // namespace

KSpaceState kspace_at_flip(const Pulse& input, const PhysicalParams& params,
                           std::span<const double> k, double flip_time) {
  const double b = checked_beta(params, "kspace_at_flip");
  require_positive_gradient(params, "kspace_at_flip");
  const Complex front = kspace_prefactor(b, params.eta) * complex_gamma_imag(b) *
                        imag_power(params.detuning_span(), -b);
  KSpaceState s;
  s.k.assign(k.begin(), k.end());
  s.field.assign(k.size(), Complex{});
  for (std::size_t n = 0; n < k.size(); ++n) {
    const double kappa = k[n] / params.eta;
    if (kappa <= 0.0) continue;
    const Complex f = input(flip_time - kappa);
    if (f == Complex{}) continue;
    s.field[n] = front * imag_power(kappa, -b) / kappa * f;
  }
  fill_polarization(s, params);
  return s;
}

KSpaceState kspace_for_output(const Pulse& output, const PhysicalParams& params,
                              std::span<const double> k, double flip_time) {
  const double b = checked_beta(params, "kspace_for_output");
  require_positive_gradient(params, "kspace_for_output");
  const Complex front = kspace_prefactor(b, params.eta) * complex_gamma_imag(-b) *
                        imag_power(params.detuning_span(), b);
  KSpaceState s;
  s.k.assign(k.begin(), k.end());
  s.field.assign(k.size(), Complex{});
  for (std::size_t n = 0; n < k.size(); ++n) {
    const double kappa = k[n] / params.eta;
    if (kappa <= 0.0) continue;
    const Complex f = output(flip_time + kappa);
    if (f == Complex{}) continue;
    s.field[n] = front * imag_power(kappa, b) / kappa * f;
  }
  fill_polarization(s, params);
  return s;
}

Complex echo_phase_factor(double tau, const PhysicalParams& params) {
  const double b = checked_beta(params, "echo_phase_factor");
  if (tau == 0.0) return {0.0, 0.0};
  const Complex gamma_ratio = complex_gamma_imag(b) / complex_gamma_imag(-b);
  return imag_power(params.detuning_span() * tau, -2.0 * b) * gamma_ratio;
}

Pulse ideal_echo(const Pulse& input, const PhysicalParams& params, double flip_time) {
  const double b = checked_beta(params, "ideal_echo");
  const double a = params.detuning_span();
  const Complex gamma_ratio = complex_gamma_imag(b) / complex_gamma_imag(-b);
  return input.reversed_about(flip_time).modulated([=](double t) {
    const double tau = t - flip_time;
    if (tau == 0.0) return Complex{};
    return imag_power(a * tau, -2.0 * b) * gamma_ratio;
  });
}

Pulse required_auxiliary(const Pulse& input, const PhysicalParams& params,
                         double flip_time) {
  return ideal_echo(input, params, flip_time)
      .scaled(std::exp(-std::abs(beta(params)) * kPi));
}

double phase_excursion(double b, double t_start, double t_end) {
  if (!(t_start > 0.0) || !(t_end > 0.0))
    fail(ErrorCode::kInvalidArgument,
         "phase_excursion: times must be > 0 (measured after the flip)");
  if (!(t_end >= t_start))
    fail(ErrorCode::kInvalidArgument, "phase_excursion: t_end must be >= t_start");
  return 2.0 * b * std::log(t_end / t_start);
}

}  // namespace gem
