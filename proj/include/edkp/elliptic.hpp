// Copyright (c) 2026 the edkp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EDKP_ELLIPTIC_HPP
#define EDKP_ELLIPTIC_HPP

#include <optional>

#include "edkp/series.hpp"
#include "edkp/theta.hpp"

namespace edkp {

inline constexpr double kPoleRadius = 1e-8;

/// zeta_a(x) = theta_a'(x)/theta_a(x). Throws PoleProximity within
/// kPoleRadius of a zero of theta_a.
Complex zeta_a(int a, Complex x, const ModularParam& m);

/// wp_a(x) = -d/dx zeta_a(x).
Complex wp_a(int a, Complex x, const ModularParam& m);

/// d/dx wp_a(x).
Complex wp_a_prime(int a, Complex x, const ModularParam& m);

/// The S-function S(x) = log(theta_1(x)/theta_4(x)) together with its
/// first three x-derivatives. The value is defined up to 2 pi i; the
/// branch tag counts the windings applied by path continuation.
struct SValue {
  Complex value;
  Complex d1;
  Complex d2;
  Complex d3;
  int branch_tag = 0;
};

/// Branch-continuation context for S along a path. Seed with the first
/// evaluation; subsequent calls pick the branch closest to the previous
/// value and fail with BranchJump if the step is too large to track.
struct PathContext {
  bool seeded = false;
  Complex last_x;
  Complex last_value;
  int winding = 0;
};

SValue s_fn(Complex x, const ModularParam& m, PathContext* path = nullptr);

/// dS/dtau by the closed form 2 pi i Sdot = S' zeta_2 + (pi^2/2) theta_4^4(0).
Complex s_dtau(Complex x, const ModularParam& m);

/// dS'/dtau by the closed form 2 pi i Sdot' = S'' zeta_2 - S' wp_2.
Complex s_prime_dtau(Complex x, const ModularParam& m);

/// 4 pi i d/dtau zeta_1(x, tau/2) =
///   -zeta_1(x,tau/2) wp_1(x,tau/2) - wp_1'(x,tau/2)/2, returned as the
/// tau-derivative itself.
Complex zeta1_halfmod_dtau(Complex x, const ModularParam& m);

/// Taylor coefficients of S(x + h) in h, orders 0..len-1 (constant term
/// on the principal branch).
Series s_taylor(Complex x, const ModularParam& m, int len);

/// Taylor coefficients of zeta_1(x + h) at the given modulus.
Series zeta1_taylor(Complex x, const ModularParam& m, int len);

}  // namespace edkp

#endif  // EDKP_ELLIPTIC_HPP
