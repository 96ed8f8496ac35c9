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

#include "gemsim/complex_gamma.hpp"

#include <array>
#include <cmath>

#include "gemsim/core_model.hpp"
#include "gemsim/error.hpp"

namespace gem {

namespace {

constexpr int kLanczosG = 7;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Valid for Re z >= 1/2. The power is formed in the log domain so that large
// imaginary parts neither overflow nor lose the phase.
std::complex<double> lanczos(std::complex<double> z) {
  z -= 1.0;
  std::complex<double> series = kLanczosCoeffs[0];
  for (int i = 1; i < kLanczosG + 2; ++i) series += kLanczosCoeffs[i] / (z + double(i));
  const std::complex<double> t = z + (kLanczosG + 0.5);
  return std::sqrt(2.0 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * series;
}

}  // namespace

std::complex<double> complex_gamma(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    fail(ErrorCode::kNumerical, "complex_gamma: pole at non-positive integer");
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    return kPi / (std::sin(kPi * z) * lanczos(1.0 - z));
  }
  return lanczos(z);
}

std::complex<double> complex_gamma_imag(double y) {
  if (y == 0.0) fail(ErrorCode::kInvalidArgument, "complex_gamma_imag: pole at y = 0");
  if (!std::isfinite(y)) fail(ErrorCode::kInvalidArgument, "complex_gamma_imag: y must be finite");
  // Gamma(-iy) is computed as conj(Gamma(iy)) so the Schwarz reflection holds bitwise.
  if (y < 0.0) return std::conj(complex_gamma_imag(-y));
  // sin(i pi y) = i sinh(pi y)
  const std::complex<double> sin_term{0.0, std::sinh(kPi * y)};
  return kPi / (sin_term * lanczos({1.0, -y}));
}

}  // namespace gem
