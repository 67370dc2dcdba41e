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

#ifndef EDKP_SERIES_HPP
#define EDKP_SERIES_HPP

#include <vector>

#include "edkp/theta.hpp"

namespace edkp {

/// Truncated Taylor series: coefficient i multiplies h^i.
using Series = std::vector<Complex>;

Series series_mul(const Series& a, const Series& b, int len);
/// a/b with b[0] != 0.
Series series_div(const Series& a, const Series& b, int len);
/// d/dh, one order shorter semantics but padded to len.
Series series_derive(const Series& a, int len);
/// Antiderivative with given constant term.
Series series_integrate(const Series& a, Complex constant, int len);
/// log(a(h)); constant term is the principal log of a[0].
Series series_log(const Series& a, int len);

/// Taylor coefficients of theta_a(x + h) in h, orders 0..len-1.
Series theta_taylor(int a, Complex x, const ModularParam& m, int len);

/// Taylor coefficients of log theta_a(x + h).
Series log_theta_taylor(int a, Complex x, const ModularParam& m, int len);

/// Powers of a Laurent tail u(z) = sum_{k>=1} c_k z^{-k} truncated at
/// order K: row p holds the z^{-k} coefficients of u^p, k = 0..K.
std::vector<std::vector<Complex>> laurent_powers(
    const std::vector<Complex>& c, int K);

/// Truncated bivariate Taylor table F(x0+dx, tau0+dtau) =
/// sum_{r+s<=P} C[r][s] dtau^r dx^s for theta-derived functions of a
/// purely imaginary modular parameter. All mixed tau-derivatives reduce
/// to u-derivatives through the heat equation.
class BivTable {
 public:
  /// kind selects the function:
  ///   Zeta1Half  : zeta_1(x, tau/2)
  ///   Wp1Half    : wp_1(x, tau/2) = -d/dx zeta_1(x, tau/2)
  ///   SPrime     : S'(x, tau)  = zeta_1 - zeta_4 at modulus tau
  ///   SSecond    : S''(x, tau)
  enum class Kind { Zeta1Half, Wp1Half, SPrime, SSecond };

  BivTable(Kind kind, Complex x0, Complex tau0, int degree,
           double series_tol = 1e-15);

  /// Compose with jets dx(s), dtau(s) whose constant terms vanish;
  /// returns the jet of F along s, truncated to the jets' length.
  Series eval_jet(const Series& dx, const Series& dtau) const;

  /// Point value F(x0, tau0).
  Complex value() const { return c_[0][0]; }

 private:
  int deg_;
  std::vector<std::vector<Complex>> c_;  // c_[r][s]
};

}  // namespace edkp

#endif  // EDKP_SERIES_HPP
