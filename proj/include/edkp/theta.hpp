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

#ifndef EDKP_THETA_HPP
#define EDKP_THETA_HPP

#include <complex>
#include <vector>

#include "edkp/errors.hpp"

namespace edkp {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline const Complex kI{0.0, 1.0};
inline const Complex kTwoPiI = Complex{0.0, 2.0 * kPi};
inline const Complex kFourPiI = Complex{0.0, 4.0 * kPi};

/// Purely imaginary modular parameter with its precomputed (real) nome
/// q = exp(i pi tau). Immutable after construction; safe to share.
class ModularParam {
 public:
  /// Throws InvalidModularParam unless Im(tau) > 0 and |Re(tau)| < 1e-14.
  explicit ModularParam(Complex tau, double series_tol = 1e-15);

  Complex tau() const { return tau_; }
  double nome_q() const { return q_; }
  int truncation_k() const { return trunc_k_; }
  double series_tol() const { return tol_; }

  /// True when Im(tau) < 0.05 and the q-series converges slowly.
  bool convergence_warning() const { return warn_; }

  /// Fresh parameter at tau/2 (nome recomputed from tau/2, not by
  /// square-rooting the cached one).
  ModularParam half() const { return ModularParam(tau_ / 2.0, tol_); }

 private:
  Complex tau_;
  double q_;
  double tol_;
  int trunc_k_;
  bool warn_;
};

/// theta_a(u, tau) by truncated q-series, a in {1,2,3,4}.
Complex theta(int a, Complex u, const ModularParam& m);

/// Order-th u-derivative of theta_a, term-wise analytic differentiation.
/// Orders up to 12 are supported (high orders feed truncated Taylor
/// expansions elsewhere); throws UnsupportedOrder beyond that.
Complex theta_du(int a, int order, Complex u, const ModularParam& m);

/// d/dtau theta_a via the heat equation: theta_a''(u) / (4 pi i).
Complex theta_dtau(int a, Complex u, const ModularParam& m);

/// d/dtau theta_a by term-wise differentiation of the q-series in tau.
/// Independent of the heat-equation route; used by the identity suite.
Complex theta_dtau_direct(int a, Complex u, const ModularParam& m);

/// [theta_a(u), theta_a'(u), ..., theta_a^{(max_order)}(u)] in one pass.
std::vector<Complex> theta_jet(int a, Complex u, const ModularParam& m,
                               int max_order);

/// Infinite-product representation of theta_1; cross-check oracle for the
/// series route.
Complex theta1_infinite_product(Complex u, const ModularParam& m);

/// Distance from x to the nearest zero of theta_a modulo the (1, tau)
/// lattice. Zeros: theta_1 at 0, theta_2 at 1/2, theta_3 at (1+tau)/2,
/// theta_4 at tau/2.
double theta_zero_distance(int a, Complex x, const ModularParam& m);

/// Distance from x to the nearest point of the (1, tau) lattice.
double lattice_distance(Complex x, Complex tau);

}  // namespace edkp

#endif  // EDKP_THETA_HPP
