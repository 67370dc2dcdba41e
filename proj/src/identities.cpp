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

#include "edkp/identities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "edkp/elliptic.hpp"
#include "edkp/sampling.hpp"

namespace edkp {

namespace {

double mag(std::initializer_list<Complex> terms) {
  double s = 0.0;
  for (Complex t : terms) s = std::max(s, std::abs(t));
  return s;
}

struct Ctx {
  const ModularParam& m;   // full modulus
  ModularParam mh;         // half modulus
  Complex th0[5];          // theta_a(0, tau)
  Complex th0h[5];         // theta_a(0, tau/2)
  explicit Ctx(const ModularParam& mm) : m(mm), mh(mm.half()) {
    for (int a = 1; a <= 4; ++a) {
      th0[a] = theta(a, Complex{0, 0}, m);
      th0h[a] = theta(a, Complex{0, 0}, mh);
    }
  }
  Complex th(int a, Complex x) const { return theta(a, x, m); }
  Complex thh(int a, Complex x) const { return theta(a, x, mh); }
};

}  // namespace

Complex h_function(Complex xi, Complex xj, Complex xk,
                   const ModularParam& m) {
  const ModularParam mh = m.half();
  const Complex d = xi - xj;
  const SValue sd = s_fn(d, m);
  const SValue si = s_fn(xi, m);
  const SValue sj = s_fn(xj, m);
  const SValue sk = s_fn(xk, m);
  auto z1 = [&](Complex x) { return zeta_a(1, x, mh); };
  auto z2 = [&](Complex x) { return zeta_a(2, x, mh); };
  auto p1 = [&](Complex x) { return wp_a(1, x, mh); };
  auto p2 = [&](Complex x) { return wp_a(2, x, mh); };
  auto p2p = [&](Complex x) { return wp_a_prime(2, x, mh); };
  return sd.d3 * (z1(xk - xi) - z1(xk - xj) + z2(d))
       - 2.0 * sd.d2 * p2(d) - sd.d1 * p2p(d)
       + 2.0 * sd.d2 * p1(xj - xk)
       + sd.d2 * (sj.d2 / sj.d1) * (-z1(xk) + z1(xk - xj) + z2(xj))
       - sd.d2 * (si.d2 / si.d1) * (-z1(xk) + z1(xk - xi) + z2(xi))
       + sd.d2 * (p2(xi) - p2(xj))
       - (sk.d1 / si.d1) * s_fn(xk - xi, m).d2 * sd.d2
       + (sk.d1 / sj.d1) * s_fn(xk - xj, m).d2 * sd.d2
       + s_fn(xk - xi, m).d2 * s_fn(xk - xj, m).d2;
}

Complex f_function(Complex xi, Complex xj, Complex u,
                   const ModularParam& m) {
  const ModularParam mh = m.half();
  const SValue sj = s_fn(xj, m);
  const SValue suj = s_fn(u + xj, m);
  const SValue sui = s_fn(u + xi, m);
  const SValue sij = s_fn(xi - xj, m);
  auto z1 = [&](Complex x) { return zeta_a(1, x, mh); };
  auto z2 = [&](Complex x) { return zeta_a(2, x, mh); };
  auto p1 = [&](Complex x) { return wp_a(1, x, mh); };
  auto p2 = [&](Complex x) { return wp_a(2, x, mh); };
  const SValue si = s_fn(xi, m);
  return 2.0 * sj.d1 * suj.d1 * p1(xi - xj)
       + sj.d1 * suj.d2 * (-z1(u + xi) + z1(xi - xj) + z2(u + xj))
       - sj.d1 * suj.d1 * p2(u + xj)
       + sj.d2 * suj.d1 * (-z1(xi) + z1(xi - xj) + z2(xj))
       - sj.d1 * suj.d1 * p2(xj)
       + sij.d2 * (si.d1 * suj.d1 + sj.d1 * sui.d1);
}

std::vector<ResidualReport> identity_suite(const ModularParam& m,
                                           int sample_count,
                                           std::uint64_t seed,
                                           double tolerance) {
  Ctx c(m);
  const double tau_im = m.tau().imag();
  Rng rng(seed);
  const Complex half{0.5, 0.0};
  std::vector<ResidualReport> out;

  auto run = [&](const std::string& name, int nsamp,
                 const std::function<void(ResidualAccumulator&, Rng&)>& fn) {
    ResidualAccumulator acc;
    Rng local(seed ^ std::hash<std::string>{}(name));
    for (int i = 0; i < nsamp; ++i) fn(acc, local);
    out.push_back(acc.finish(name, tau_im, tolerance));
  };

  // one-point draws; derived offsets x+1/2, 2x, ... are rechecked
  auto draw1 = [&](Rng& r, std::initializer_list<double> mults) {
    for (;;) {
      Complex x = draw_admissible(r, m.tau());
      bool ok = true;
      for (double k : mults)
        if (!admissible({k * x}, m.tau())) ok = false;
      if (ok) return x;
    }
  };
  auto draw_pair = [&](Rng& r) {
    for (;;) {
      Complex x = draw_admissible(r, m.tau());
      Complex y = draw_admissible(r, m.tau());
      if (admissible({x - y, x + y}, m.tau())) return std::pair{x, y};
    }
  };

  run("theta1prime", 1, [&](ResidualAccumulator& acc, Rng&) {
    const Complex lhs = theta_du(1, 1, Complex{0, 0}, m);
    const Complex rhs = kPi * c.th0[2] * c.th0[3] * c.th0[4];
    acc.add(std::abs(lhs - rhs), mag({lhs, rhs}));
  });

  run("heat", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    const Complex x = draw_admissible(r, m.tau());
    for (int a = 1; a <= 4; ++a) {
      const Complex lhs = kFourPiI * theta_dtau_direct(a, x, m);
      const Complex rhs = theta_du(a, 2, x, m);
      acc.add(std::abs(lhs - rhs), mag({lhs, rhs}));
    }
  });

  run("n2_full_modulus", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    const Complex x = draw_admissible(r, m.tau());
    const Complex lhs = s_fn(x, m).d1;
    const Complex rhs = kPi * c.th0[4] * c.th0[4] * c.th(2, x) * c.th(3, x) /
                        (c.th(1, x) * c.th(4, x));
    acc.add(std::abs(lhs - rhs), mag({lhs, rhs}));
  });

  run("n2_half_modulus", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    const Complex x = draw_admissible(r, m.tau());
    const Complex lhs = s_fn(x, m).d1;
    const Complex rhs =
        kPi * c.th0h[3] * c.th0h[4] * c.thh(2, x) / c.thh(1, x);
    acc.add(std::abs(lhs - rhs), mag({lhs, rhs}));
  });

  run("n3_full_modulus", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    const Complex x = draw1(r, {2.0});
    const Complex lhs = s_fn(x, m).d2;
    const Complex t1 = c.th(1, x), t4 = c.th(4, x);
    const Complex rhs = -kPi * kPi * c.th0[2] * c.th0[2] * c.th0[3] *
                        c.th0[3] * c.th0[4] * c.th0[4] * c.th0[4] *
                        c.th(4, 2.0 * x) / (t1 * t1 * t4 * t4);
    acc.add(std::abs(lhs - rhs), mag({lhs, rhs}));
  });

  run("n3_half_modulus", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    const Complex x = draw_admissible(r, m.tau());
    const Complex lhs = s_fn(x, m).d2;
    const Complex t1 = c.thh(1, x);
    const Complex rhs = -kPi * kPi * c.th0h[3] * c.th0h[4] * c.th0h[2] *
                        c.th0h[2] * c.thh(3, x) * c.thh(4, x) / (t1 * t1);
    acc.add(std::abs(lhs - rhs), mag({lhs, rhs}));
  });

  // Sdot via the independent tau-differentiated series on the left.
  run("n4", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    const Complex x = draw_admissible(r, m.tau());
    const Complex sdot = theta_dtau_direct(1, x, m) / c.th(1, x) -
                         theta_dtau_direct(4, x, m) / c.th(4, x);
    const Complex lhs = kTwoPiI * sdot;
    const Complex t44 = c.th0[4] * c.th0[4] * c.th0[4] * c.th0[4];
    const Complex rhs = s_fn(x, m).d1 * zeta_a(2, x, m) + kPi * kPi / 2.0 * t44;
    acc.add(std::abs(lhs - rhs), mag({lhs, rhs}));
  });

  run("n5", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    const Complex x = draw_admissible(r, m.tau());
    // Sdot' = d/dtau (theta1'/theta1 - theta4'/theta4), series route
    Complex lhs{0, 0};
    {
      auto term = [&](int a) {
        const Complex t0 = c.th(a == 1 ? 1 : 4, x);
        const Complex t1 = theta_du(a == 1 ? 1 : 4, 1, x, m);
        // d/dtau of theta and theta' by independent series
        const Complex dt0 = theta_dtau_direct(a == 1 ? 1 : 4, x, m);
        // d/dtau theta' = d/dx d/dtau theta: differentiate the direct
        // series once in x via a small central step is unnecessary; use
        // heat on theta': d/dtau theta' = theta'''/(4 pi i)
        const Complex dt1 = theta_du(a == 1 ? 1 : 4, 3, x, m) / kFourPiI;
        return dt1 / t0 - dt0 * t1 / (t0 * t0);
      };
      lhs = kTwoPiI * (term(1) - term(4));
    }
    const SValue s = s_fn(x, m);
    const Complex rhs = s.d2 * zeta_a(2, x, m) - s.d1 * wp_a(2, x, m);
    acc.add(std::abs(lhs - rhs), mag({lhs, rhs}));
  });

  run("n6", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    const Complex x = draw_admissible(r, m.tau());
    const SValue s = s_fn(x, m);
    const Complex lhs = s.d1 * s.d2;
    const Complex rhs = 0.5 * wp_a_prime(1, x, c.mh);
    acc.add(std::abs(lhs - rhs), mag({lhs, rhs}));
  });

  run("n6a", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    const Complex x = draw_admissible(r, m.tau());
    const Complex t44 = c.th0[4] * c.th0[4] * c.th0[4] * c.th0[4];
    const Complex lhs = s_fn(x, m).d1 * s_fn(x + half, m).d1;
    const Complex rhs = -kPi * kPi * t44;
    acc.add(std::abs(lhs - rhs), mag({lhs, rhs}));
  });

  run("n8", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    const Complex x = draw_admissible(r, m.tau());
    const Complex lhs = s_fn(x, m).d1;
    const Complex rhs = 2.0 * zeta_a(1, x, m) - zeta_a(1, x, c.mh);
    acc.add(std::abs(lhs - rhs), mag({lhs, rhs}));
  });

  run("n9", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    const Complex x = draw_admissible(r, m.tau());
    const Complex lhs = 2.0 * zeta_a(2, x, m) - zeta_a(2, x, c.mh);
    const Complex rhs = s_fn(x + half, m).d1;
    acc.add(std::abs(lhs - rhs), mag({lhs, rhs}));
  });

  run("n10", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    const Complex x = draw_admissible(r, m.tau());
    const Complex lhs = 2.0 * wp_a(2, x, m) - wp_a(2, x, c.mh);
    const Complex rhs = -s_fn(x + half, m).d2;
    acc.add(std::abs(lhs - rhs), mag({lhs, rhs}));
  });

  run("n11", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    auto [x, y] = draw_pair(r);
    const Complex lhs = wp_a(2, x, m) - wp_a(2, y, m);
    const Complex tp = theta_du(1, 1, Complex{0, 0}, m);
    const Complex t2x = c.th(2, x), t2y = c.th(2, y);
    const Complex rhs =
        tp * tp * c.th(1, x - y) * c.th(1, x + y) / (t2x * t2x * t2y * t2y);
    acc.add(std::abs(lhs - rhs), mag({lhs, rhs}));
  });

  run("n12", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    const Complex x = draw_admissible(r, m.tau());
    const Complex lhs = wp_a(1, x, c.mh) - wp_a(2, Complex{0, 0}, c.mh);
    const Complex sp = s_fn(x, m).d1;
    acc.add(std::abs(lhs - sp * sp), mag({lhs, sp * sp}));
  });

  run("den1", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    // quartic shuffle at the half modulus
    const Complex x = draw_admissible(r, m.tau());
    const Complex y = draw_admissible(r, m.tau());
    const Complex u = draw_admissible(r, m.tau());
    const Complex v = draw_admissible(r, m.tau());
    auto F = [&](Complex a, Complex b, Complex e, Complex f) {
      return c.thh(2, a) * c.thh(2, b) * c.thh(1, e) * c.thh(1, f) -
             c.thh(1, a) * c.thh(1, b) * c.thh(2, e) * c.thh(2, f);
    };
    const Complex x1 = (x + y + u + v) / 2.0, y1 = (x + y - u - v) / 2.0;
    const Complex u1 = (x - y + u - v) / 2.0, v1 = (x - y - u + v) / 2.0;
    const Complex lhs = F(x, y, u, v), rhs = F(x1, y1, u1, v1);
    acc.add(std::abs(lhs - rhs), mag({lhs, rhs}));
  });

  run("num3", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    const Complex x = draw1(r, {2.0});
    const Complex lhs = c.th(1, 2.0 * x) * c.th0[2] * c.th0[3] * c.th0[4];
    const Complex rhs =
        2.0 * c.th(1, x) * c.th(2, x) * c.th(3, x) * c.th(4, x);
    acc.add(std::abs(lhs - rhs), mag({lhs, rhs}));
  });

  run("a16", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    for (;;) {
      const Complex x1 = draw_admissible(r, m.tau());
      const Complex x2 = draw_admissible(r, m.tau());
      if (!admissible({x1 - x2, x1 + x2}, m.tau())) continue;
      const Complex lhs = -zeta_a(1, x1, c.mh) + zeta_a(1, x2, c.mh) +
                          2.0 * zeta_a(2, x1 - x2, m);
      const Complex rhs = kPi * c.th0[2] * c.th0[3] * c.th0[4] * c.th0[4] *
                          c.th(1, x1 - x2) * c.th(4, x1 - x2) *
                          c.th(2, x1 + x2) /
                          (c.th(1, x1) * c.th(4, x1) * c.th(1, x2) *
                           c.th(4, x2) * c.th(2, x1 - x2));
      acc.add(std::abs(lhs - rhs), mag({lhs, rhs}));
      break;
    }
  });

  run("c5", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    auto [xi, xj] = draw_pair(r);
    const SValue si = s_fn(xi, m);
    const Complex t1 = si.d2 * zeta_a(1, xj - xi, c.mh);
    const Complex t2 = -si.d2 * zeta_a(1, xj, c.mh);
    const Complex t3 = si.d1 * wp_a(1, xi - xj, c.mh);
    const Complex t4 = 2.0 * si.d2 * zeta_a(2, xi, m);
    const Complex t5 = -2.0 * si.d1 * wp_a(2, xi, m);
    const Complex t6 = s_fn(xj, m).d1 * s_fn(xj - xi, m).d2;
    const Complex sum = t1 + t2 + t3 + t4 + t5 + t6;
    acc.add(std::abs(sum), mag({t1, t2, t3, t4, t5, t6}));
  });

  run("c6", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    const Complex x = draw_admissible(r, m.tau());
    const Complex t1 =
        -s_fn(x, m).d1 * (wp_a(2, x, c.mh) - wp_a(2, Complex{0, 0}, c.mh));
    const Complex t2 = s_fn(half, m).d2 * s_fn(x + half, m).d1;
    acc.add(std::abs(t1 + t2), mag({t1, t2}));
  });

  run("h_zero", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    for (;;) {
      const Complex xi = draw_admissible(r, m.tau());
      const Complex xj = draw_admissible(r, m.tau());
      const Complex xk = draw_admissible(r, m.tau());
      if (!admissible({xi - xj, xk - xi, xk - xj}, m.tau())) continue;
      const SValue sd = s_fn(xi - xj, m);
      const double scale =
          std::abs(sd.d3) * std::max(1.0, std::abs(zeta_a(1, xk - xi, c.mh)));
      acc.add(std::abs(h_function(xi, xj, xk, m)), std::max(1.0, scale));
      break;
    }
  });

  run("f_zero", sample_count, [&](ResidualAccumulator& acc, Rng& r) {
    for (;;) {
      const Complex xi = draw_admissible(r, m.tau());
      const Complex xj = draw_admissible(r, m.tau());
      const Complex u = draw_admissible(r, m.tau());
      if (!admissible({xi - xj, u + xi, u + xj}, m.tau())) continue;
      const double scale = std::abs(s_fn(xj, m).d1 * s_fn(u + xj, m).d1 *
                                    wp_a(1, xi - xj, c.mh));
      acc.add(std::abs(f_function(xi, xj, u, m)), std::max(1.0, scale));
      break;
    }
  });

  return out;
}

}  // namespace edkp
