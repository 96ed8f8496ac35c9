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

#include "gemsim/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "gemsim/error.hpp"

namespace gem {

namespace {

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void PhysicalParams::validate() const {
  std::ostringstream why;
  if (!finite(g) || g < 0.0) why << "g must be finite and >= 0 (got " << g << "); ";
  if (!finite(N) || N < 0.0) why << "N must be finite and >= 0 (got " << N << "); ";
  if (!finite(eta) || eta == 0.0) why << "eta must be finite and nonzero (got " << eta << "); ";
  if (!finite(gamma) || gamma < 0.0)
    why << "gamma must be finite and >= 0 (got " << gamma << "); ";
  if (!finite(z0) || z0 <= 0.0) why << "z0 must be finite and > 0 (got " << z0 << "); ";
  const std::string msg = why.str();
  if (!msg.empty()) fail(ErrorCode::kInvalidArgument, "invalid physical parameters: " + msg);
  if (!finite(g * g * N / eta))
    fail(ErrorCode::kInvalidArgument, "invalid physical parameters: beta is not finite");
}

double PhysicalParams::detuning_span() const { return std::abs(eta) * z0; }

double beta(const PhysicalParams& params) {
  return params.g * params.g * params.N / params.eta;
}

// ---------------------------------------------------------------------------
// Pulse

Pulse::Pulse(Envelope envelope, TimeInterval support, double bandwidth)
    : envelope_(std::make_shared<const Envelope>(std::move(envelope))),
      support_(support),
      bandwidth_(bandwidth) {
  if (!(support.end >= support.start))
    fail(ErrorCode::kInvalidArgument, "pulse support must satisfy start <= end");
  if (!(bandwidth >= 0.0)) fail(ErrorCode::kInvalidArgument, "pulse bandwidth must be >= 0");
}

Complex Pulse::operator()(double t) const {
  if (!envelope_ || !support_.contains(t)) return {0.0, 0.0};
  const Complex v = (*envelope_)(t);
  return std::abs(v) < kEnvelopeFloor ? Complex{} : v;
}

Pulse Pulse::scaled(Complex factor) const {
  if (!envelope_) return {};
  auto base = envelope_;
  return Pulse([base, factor](double t) { return factor * (*base)(t); }, support_,
               bandwidth_);
}

Pulse Pulse::shifted(double dt) const {
  if (!envelope_) return {};
  auto base = envelope_;
  return Pulse([base, dt](double t) { return (*base)(t - dt); },
               {support_.start + dt, support_.end + dt}, bandwidth_);
}

Pulse Pulse::reversed_about(double t_mirror) const {
  if (!envelope_) return {};
  auto base = envelope_;
  return Pulse([base, t_mirror](double t) { return (*base)(2.0 * t_mirror - t); },
               {2.0 * t_mirror - support_.end, 2.0 * t_mirror - support_.start},
               bandwidth_);
}

Pulse Pulse::modulated(std::function<Complex(double)> factor) const {
  if (!envelope_) return {};
  auto base = envelope_;
  return Pulse([base, f = std::move(factor)](double t) { return f(t) * (*base)(t); },
               support_, bandwidth_);
}

Pulse Pulse::with_carrier(double omega) const {
  return modulated([omega](double t) { return std::polar(1.0, omega * t); });
}

Pulse operator+(const Pulse& a, const Pulse& b) {
  if (a.is_null()) return b;
  if (b.is_null()) return a;
  // Each term is evaluated through its own support cut, so the sum stays exact.
  return Pulse([a, b](double t) { return a(t) + b(t); },
               {std::min(a.support_.start, b.support_.start),
                std::max(a.support_.end, b.support_.end)},
               std::max(a.bandwidth_, b.bandwidth_));
}

Pulse gaussian_pulse(double center, double sigma, Complex amplitude) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    fail(ErrorCode::kInvalidArgument, "gaussian_pulse: sigma must be > 0");
  const double inv = 1.0 / (2.0 * sigma * sigma);
  return Pulse(
      [=](double t) {
        const double u = t - center;
        return amplitude * std::exp(-u * u * inv);
      },
      {center - 5.0 * sigma, center + 5.0 * sigma}, 1.0 / sigma);
}

Pulse raised_cosine_pulse(double center, double half_width, Complex amplitude) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    fail(ErrorCode::kInvalidArgument, "raised_cosine_pulse: half_width must be > 0");
  const double k = kPi / (2.0 * half_width);
  return Pulse(
      [=](double t) {
        const double c = std::cos(k * (t - center));
        return amplitude * (c * c);
      },
      {center - half_width, center + half_width}, 3.709 / half_width);
}

double pulse_energy(const Pulse& pulse, std::size_t samples) {
  if (pulse.is_null()) return 0.0;
  const auto& s = pulse.support();
  if (s.length() <= 0.0) return 0.0;
  samples = std::max<std::size_t>(samples, 2);
  const double h = s.length() / static_cast<double>(samples - 1);
  double sum = 0.0;
  for (std::size_t n = 0; n < samples; ++n) {
    const double w = (n == 0 || n + 1 == samples) ? 0.5 : 1.0;
    sum += w * std::norm(pulse(s.start + h * static_cast<double>(n)));
  }
  return sum * h;
}

CoverageReport validate_spectral_coverage(const PhysicalParams& params,
                                          const Pulse& pulse) {
  CoverageReport r;
  const double span = params.detuning_span();
  if (!(span > 0.0) || !std::isfinite(span)) {
    r.message = "degenerate detuning window";
    return r;
  }
  const double b = std::abs(beta(params));
  r.optical_depth_ratio = pulse.bandwidth() * std::max(b, 1.0) / span;
  r.window_ratio = kSignificantBandwidths * pulse.bandwidth() / span;
  const bool depth_ok = r.optical_depth_ratio <= kCoverageRatioLimit;
  const bool window_ok = r.window_ratio <= 1.0;
  r.ok = depth_ok && window_ok;
  std::ostringstream msg;
  msg << "bandwidth*max(beta,1)/(eta z0) = " << r.optical_depth_ratio
      << (depth_ok ? " <= " : " > ") << kCoverageRatioLimit
      << "; spectral extent/(eta z0) = " << r.window_ratio << (window_ok ? " <= 1" : " > 1");
  r.message = msg.str();
  return r;
}

// ---------------------------------------------------------------------------
// Grid

Grid Grid::for_sample(const PhysicalParams& params, std::size_t nz, std::size_t nt,
                      double t_min, double t_max) {
  Grid g;
  g.nz = nz;
  g.nt = nt;
  g.z_min = -params.z0;
  g.z_max = params.z0;
  g.t_min = t_min;
  g.t_max = t_max;
  return g;
}

std::size_t Grid::nearest_time_index(double time) const {
  const double x = std::round((time - t_min) / dt());
  if (x <= 0.0) return 0;
  if (x >= static_cast<double>(nt - 1)) return nt - 1;
  return static_cast<std::size_t>(x);
}

double Grid::stability_product(double eta) const {
  return std::abs(eta) * std::max(std::abs(z_min), std::abs(z_max)) * dt();
}

void Grid::validate(double eta) const {
  if (nz < 2 || nt < 2) fail(ErrorCode::kInvalidArgument, "grid needs nz >= 2 and nt >= 2");
  if (!(z_max > z_min) || !(t_max > t_min) || !std::isfinite(z_max - z_min) ||
      !std::isfinite(t_max - t_min))
    fail(ErrorCode::kInvalidArgument, "grid bounds must be finite with max > min");
  const double p = stability_product(eta);
  // Relative slack absorbs rounding in dt for grids sitting exactly on the limit.
  if (p > kStabilityLimit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "grid violates the stability bound: eta*z0*dt = " << p << " > "
        << kStabilityLimit;
    fail(ErrorCode::kInvalidArgument, msg.str());
  }
}

// ---------------------------------------------------------------------------
// FlipSchedule

FlipSchedule::FlipSchedule(std::vector<double> times) : times_(std::move(times)) {
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]))
      fail(ErrorCode::kInvalidArgument, "flip times must be finite");
    if (i > 0 && !(times_[i] > times_[i - 1]))
      fail(ErrorCode::kInvalidArgument, "flip times must be strictly increasing");
  }
}

void FlipSchedule::validate_within(const Grid& grid) const {
  for (double t : times_) {
    if (t < grid.t_min || t > grid.t_max) {
      std::ostringstream msg;
      msg << "flip time " << t << " lies outside the grid [" << grid.t_min << ", "
          << grid.t_max << "]";
      fail(ErrorCode::kOutOfRange, msg.str());
    }
  }
}

}  // namespace gem
