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

#include "edkp/theta.hpp"

#include <cmath>
#include <cstdlib>

namespace edkp {

namespace {

constexpr int kMaxOrder = 12;
constexpr int kMaxTerms = 64;

// Series conventions (q = e^{i pi tau}, real here):
//   theta_1(u) = 2 sum_{k>=0} (-1)^k q^{(k+1/2)^2} sin((2k+1) pi u)
//   theta_2(u) = 2 sum_{k>=0} q^{(k+1/2)^2} cos((2k+1) pi u)
//   theta_3(u) = 1 + 2 sum_{k>=1} q^{k^2} cos(2k pi u)
//   theta_4(u) = 1 + 2 sum_{k>=1} (-1)^k q^{k^2} cos(2k pi u)
// A u-derivative of order m multiplies a term by w^m and shifts the phase
// by m pi/2; a tau-derivative multiplies by i pi n^2.

int terms_needed(double q, double tol, int order, bool half_index) {
  for (int k = 0; k < kMaxTerms; ++k) {
    double n = half_index ? k + 1.5 : k + 1.0;
    double w = half_index ? (2 * k + 3) * kPi : 2 * (k + 1) * kPi;
    double fac = 1.0;
    for (int d = 0; d < order; ++d) fac *= w;
    if (2.0 * std::pow(q, n * n) * std::max(1.0, fac) < tol) return k + 1;
  }
  return kMaxTerms;
}

}  // namespace

ModularParam::ModularParam(Complex tau, double series_tol)
    : tau_(tau), tol_(series_tol) {
  if (!(tau.imag() > 0.0))
    throw InvalidModularParam("Im(tau) must be positive");
  if (std::abs(tau.real()) > 1e-14)
    throw InvalidModularParam("tau must be purely imaginary");
  q_ = std::exp(-kPi * tau.imag());
  warn_ = tau.imag() < 0.05;
  trunc_k_ = terms_needed(q_, tol_, 0, true);
}

std::vector<Complex> theta_jet(int a, Complex u, const ModularParam& m,
                               int max_order) {
  if (a < 1 || a > 4) throw Error("theta index must be in 1..4");
  if (max_order < 0 || max_order > 2 * kMaxOrder)
    throw UnsupportedOrder("theta_jet order out of range");
  const double q = m.nome_q();
  std::vector<Complex> out(max_order + 1, Complex{0.0, 0.0});
  const bool half = (a == 1 || a == 2);
  const int kmax = terms_needed(q, m.series_tol(), max_order, half);
  for (int k = (half ? 0 : 1); k < (half ? kmax : kmax + 1); ++k) {
    const double n = half ? k + 0.5 : static_cast<double>(k);
    const double w = 2.0 * n * kPi;
    double amp = 2.0 * std::pow(q, n * n);
    if ((a == 1 || a == 4) && (k % 2 == 1)) amp = -amp;
    // base phase: sin for theta_1, cos (= sin shifted by pi/2) otherwise
    const Complex arg = w * u + (a == 1 ? 0.0 : kPi / 2.0);
    const Complex s = std::sin(arg);
    const Complex c = std::cos(arg);
    const Complex cycle[4] = {s, c, -s, -c};
    double wpow = 1.0;
    for (int d = 0; d <= max_order; ++d) {
      out[d] += amp * wpow * cycle[d % 4];
      wpow *= w;
    }
  }
  if ((a == 3 || a == 4)) out[0] += 1.0;
  return out;
}

Complex theta(int a, Complex u, const ModularParam& m) {
  return theta_jet(a, u, m, 0)[0];
}

Complex theta_du(int a, int order, Complex u, const ModularParam& m) {
  if (order < 0 || order > kMaxOrder)
    throw UnsupportedOrder("theta_du supports orders 0..12");
  return theta_jet(a, u, m, order)[order];
}

Complex theta_dtau(int a, Complex u, const ModularParam& m) {
  return theta_du(a, 2, u, m) / kFourPiI;
}

Complex theta_dtau_direct(int a, Complex u, const ModularParam& m) {
  const double q = m.nome_q();
  const bool half = (a == 1 || a == 2);
  const int kmax = terms_needed(q, m.series_tol(), 2, half);
  Complex acc{0.0, 0.0};
  for (int k = (half ? 0 : 1); k < (half ? kmax : kmax + 1); ++k) {
    const double n = half ? k + 0.5 : static_cast<double>(k);
    const double w = 2.0 * n * kPi;
    double amp = 2.0 * std::pow(q, n * n);
    if ((a == 1 || a == 4) && (k % 2 == 1)) amp = -amp;
    const Complex arg = w * u + (a == 1 ? 0.0 : kPi / 2.0);
    acc += (kI * kPi * n * n) * amp * std::sin(arg);
  }
  return acc;
}

Complex theta1_infinite_product(Complex u, const ModularParam& m) {
  // theta_1(u) = i e^{i pi tau/4 - i pi u}
  //              prod_k (1-q^{2k}) (1-q^{2(k-1)} e^{2 pi i u}) (1-q^{2k} e^{-2 pi i u})
  const double q2 = m.nome_q() * m.nome_q();
  const Complex ep = std::exp(kTwoPiI * u);
  const Complex em = std::exp(-kTwoPiI * u);
  Complex prod = kI * std::exp(kI * kPi * m.tau() / 4.0 - kI * kPi * u);
  double q2k = 1.0;  // q^{2(k-1)} entering the u-dependent factor
  const double grow = std::max({1.0, std::abs(ep), std::abs(em)});
  for (int k = 1; k <= kMaxTerms; ++k) {
    const double q2km1 = q2k;  // q^{2(k-1)}
    q2k *= q2;                 // q^{2k}
    prod *= (1.0 - q2k) * (1.0 - q2km1 * ep) * (1.0 - q2k * em);
    if (q2k * grow < m.series_tol() && k > 1) break;
  }
  return prod;
}

double lattice_distance(Complex x, Complex tau) {
  // tau purely imaginary: the lattice is the product grid Z x (Im tau) Z.
  const double p = tau.imag();
  double re = std::remainder(x.real(), 1.0);
  double im = std::remainder(x.imag(), p);
  return std::hypot(re, im);
}

double theta_zero_distance(int a, Complex x, const ModularParam& m) {
  Complex shift{0.0, 0.0};
  switch (a) {
    case 1: break;
    case 2: shift = Complex{0.5, 0.0}; break;
    case 3: shift = (1.0 + m.tau()) / 2.0; break;
    case 4: shift = m.tau() / 2.0; break;
    default: throw Error("theta index must be in 1..4");
  }
  return lattice_distance(x - shift, m.tau());
}

}  // namespace edkp
