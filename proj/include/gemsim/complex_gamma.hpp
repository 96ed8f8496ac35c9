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

#ifndef GEMSIM_COMPLEX_GAMMA_HPP
#define GEMSIM_COMPLEX_GAMMA_HPP

#include <complex>

namespace gem {

/// Gamma function of a complex argument (Lanczos, g = 7, nine coefficients,
/// reflected for Re z < 1/2). Throws Error(kNumerical) at the poles.
std::complex<double> complex_gamma(std::complex<double> z);

/// Gamma(i y) for real y != 0. Throws Error(kInvalidArgument) for y == 0.
std::complex<double> complex_gamma_imag(double y);

}  // namespace gem

#endif  // GEMSIM_COMPLEX_GAMMA_HPP
