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

#include "edkp/elliptic.hpp"

#include <cmath>

namespace edkp {

namespace {

void check_pole(int a, Complex x, const ModularParam& m) {
  if (theta_zero_distance(a, x, m) < kPoleRadius)
    throw PoleProximity("argument within 1e-8 of a zero of theta_" +
                        std::to_string(a));
}

// First three log-derivatives of theta_a at x.
struct LogDerivs {
  Complex l1, l2, l3;
};

LogDerivs log_derivs(int a, Complex x, const ModularParam& m) {
  auto t = theta_jet(a, x, m, 3);
  const Complex r1 = t[1] / t[0];
  const Complex r2 = t[2] / t[0];
  const Complex r3 = t[3] / t[0];
  LogDerivs out;
  out.l1 = r1;
  out.l2 = r2 - r1 * r1;
  out.l3 = r3 - 3.0 * r2 * r1 + 2.0 * r1 * r1 * r1;
  return out;
}

}  // namespace

Complex zeta_a(int a, Complex x, const ModularParam& m) {
  check_pole(a, x, m);
  auto t = theta_jet(a, x, m, 1);
  return t[1] / t[0];
}

Complex wp_a(int a, Complex x, const ModularParam& m) {
  check_pole(a, x, m);
  return -log_derivs(a, x, m).l2;
}

Complex wp_a_prime(int a, Complex x, const ModularParam& m) {
  check_pole(a, x, m);
  return -log_derivs(a, x, m).l3;
}

SValue s_fn(Complex x, const ModularParam& m, PathContext* path) {
  check_pole(1, x, m);
  check_pole(4, x, m);
  auto t1 = theta_jet(1, x, m, 3);
  auto t4 = theta_jet(4, x, m, 3);
  SValue out;
  out.value = std::log(t1[0] / t4[0]);
  LogDerivs a = log_derivs(1, x, m), b = log_derivs(4, x, m);
  out.d1 = a.l1 - b.l1;
  out.d2 = a.l2 - b.l2;
  out.d3 = a.l3 - b.l3;
  if (path) {
    if (path->seeded) {
      // choose the 2 pi i branch closest to the previous value
      const double dw =
          (path->last_value.imag() - out.value.imag()) / (2.0 * kPi);
      const int w = static_cast<int>(std::lround(dw));
      out.value += Complex{0.0, 2.0 * kPi * w};
      out.branch_tag = path->winding + w;
      if (std::abs(out.value.imag() - path->last_value.imag()) > kPi / 2.0)
        throw BranchJump("S branch tracking lost: path step too large");
      path->winding = out.branch_tag;
    }
    path->seeded = true;
    path->last_x = x;
    path->last_value = out.value;
  }
  return out;
}

Complex s_dtau(Complex x, const ModularParam& m) {
  const Complex sp = s_fn(x, m).d1;
  const Complex z2 = zeta_a(2, x, m);
  const Complex t4 = theta(4, Complex{0.0, 0.0}, m);
  const Complex t44 = t4 * t4 * t4 * t4;
  return (sp * z2 + kPi * kPi / 2.0 * t44) / kTwoPiI;
}

Complex s_prime_dtau(Complex x, const ModularParam& m) {
  const SValue s = s_fn(x, m);
  return (s.d2 * zeta_a(2, x, m) - s.d1 * wp_a(2, x, m)) / kTwoPiI;
}

Complex zeta1_halfmod_dtau(Complex x, const ModularParam& m) {
  const ModularParam mh = m.half();
  const Complex z = zeta_a(1, x, mh);
  const Complex p = wp_a(1, x, mh);
  const Complex pp = wp_a_prime(1, x, mh);
  return (-z * p - 0.5 * pp) / kFourPiI;
}

Series s_taylor(Complex x, const ModularParam& m, int len) {
  Series l1 = log_theta_taylor(1, x, m, len);
  Series l4 = log_theta_taylor(4, x, m, len);
  for (int i = 0; i < len; ++i) l1[i] -= l4[i];
  return l1;
}

Series zeta1_taylor(Complex x, const ModularParam& m, int len) {
  Series lg = log_theta_taylor(1, x, m, len + 1);
  return series_derive(lg, len);
}

}  // namespace edkp
