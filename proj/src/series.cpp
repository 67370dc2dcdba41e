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

#include "edkp/series.hpp"

#include <cmath>

namespace edkp {

Series series_mul(const Series& a, const Series& b, int len) {
  Series out(len, Complex{0.0, 0.0});
  for (int i = 0; i < static_cast<int>(a.size()) && i < len; ++i) {
    if (a[i] == Complex{0.0, 0.0}) continue;
    const int jmax = std::min<int>(b.size(), len - i);
    for (int j = 0; j < jmax; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Series series_div(const Series& a, const Series& b, int len) {
  Series out(len, Complex{0.0, 0.0});
  for (int i = 0; i < len; ++i) {
    Complex acc = i < static_cast<int>(a.size()) ? a[i] : Complex{0.0, 0.0};
    for (int j = 1; j <= i; ++j) {
      if (j < static_cast<int>(b.size())) acc -= b[j] * out[i - j];
    }
    out[i] = acc / b[0];
  }
  return out;
}

Series series_derive(const Series& a, int len) {
  Series out(len, Complex{0.0, 0.0});
  for (int i = 0; i + 1 < static_cast<int>(a.size()) && i < len; ++i)
    out[i] = double(i + 1) * a[i + 1];
  return out;
}

Series series_integrate(const Series& a, Complex constant, int len) {
  Series out(len, Complex{0.0, 0.0});
  out[0] = constant;
  for (int i = 1; i < len; ++i)
    if (i - 1 < static_cast<int>(a.size())) out[i] = a[i - 1] / double(i);
  return out;
}

Series series_log(const Series& a, int len) {
  Series d = series_derive(a, len);
  Series q = series_div(d, a, len);
  return series_integrate(q, std::log(a[0]), len);
}

Series theta_taylor(int a, Complex x, const ModularParam& m, int len) {
  auto jet = theta_jet(a, x, m, len - 1);
  double fact = 1.0;
  for (int i = 0; i < len; ++i) {
    jet[i] /= fact;
    fact *= double(i + 1);
  }
  return jet;
}

Series log_theta_taylor(int a, Complex x, const ModularParam& m, int len) {
  return series_log(theta_taylor(a, x, m, len), len);
}

std::vector<std::vector<Complex>> laurent_powers(
    const std::vector<Complex>& c, int K) {
  std::vector<std::vector<Complex>> up(
      K + 1, std::vector<Complex>(K + 1, Complex{0.0, 0.0}));
  up[0][0] = 1.0;
  for (int p = 1; p <= K; ++p) {
    for (int i = 0; i <= K; ++i) {
      if (up[p - 1][i] == Complex{0.0, 0.0}) continue;
      for (int k = 1; k + i <= K && k <= static_cast<int>(c.size()); ++k)
        up[p][i + k] += up[p - 1][i] * c[k - 1];
    }
  }
  return up;
}

namespace {

// Bivariate truncated polynomials in (dtau, dx), total degree <= deg.
using Biv = std::vector<std::vector<Complex>>;

Biv biv_zero(int deg) {
  return Biv(deg + 1, std::vector<Complex>(deg + 1, Complex{0.0, 0.0}));
}

Biv biv_div(const Biv& a, const Biv& b, int deg) {
  Biv out = biv_zero(deg);
  for (int t = 0; t <= deg; ++t) {
    for (int r = 0; r <= t; ++r) {
      const int s = t - r;
      Complex acc = a[r][s];
      for (int r2 = 0; r2 <= r; ++r2) {
        for (int s2 = 0; s2 <= s; ++s2) {
          if (r2 == 0 && s2 == 0) continue;
          acc -= b[r2][s2] * out[r - r2][s - s2];
        }
      }
      out[r][s] = acc / b[0][0];
    }
  }
  return out;
}

// Bivariate Taylor of theta_a^{(d)}(x0 + dx, modulus) where modulus is
// tau/2 (half=true) or tau (half=false) and dtau refers to the FULL tau.
// Heat equation: d/dtau theta(x, tau) = theta''/(4 pi i), so at half
// modulus d/dtau theta(x, tau/2) = theta''(x, tau/2)/(8 pi i).
Biv biv_theta(int a, int d, Complex x0, const ModularParam& mod, bool half,
              int deg) {
  const int need = 2 * deg + deg + d;  // s + 2r <= 3*deg, plus base order d
  auto jet = theta_jet(a, x0, mod, need);
  const Complex denom = half ? Complex{0.0, 8.0 * kPi} : kFourPiI;
  Biv out = biv_zero(deg);
  double rfact = 1.0;
  Complex dpow{1.0, 0.0};
  for (int r = 0; r <= deg; ++r) {
    double sfact = 1.0;
    for (int s = 0; s + r <= deg; ++s) {
      out[r][s] = jet[s + 2 * r + d] / (dpow * rfact * sfact);
      sfact *= double(s + 1);
    }
    rfact *= double(r + 1);
    dpow *= denom;
  }
  return out;
}

Biv biv_x_derivative(const Biv& a, int deg) {
  Biv out = biv_zero(deg);
  for (int r = 0; r <= deg; ++r)
    for (int s = 0; s + r <= deg; ++s) out[r][s] = double(s + 1) * a[r][s + 1];
  return out;
}

}  // namespace

BivTable::BivTable(Kind kind, Complex x0, Complex tau0, int degree,
                   double series_tol)
    : deg_(degree) {
  // Wp1Half and SSecond are x-derivatives of Zeta1Half / SPrime, so their
  // underlying tables are built one degree higher.
  const bool derived = (kind == Kind::Wp1Half || kind == Kind::SSecond);
  const int d0 = derived ? degree + 1 : degree;
  if (kind == Kind::Zeta1Half || kind == Kind::Wp1Half) {
    ModularParam mh(tau0 / 2.0, series_tol);
    Biv t0 = biv_theta(1, 0, x0, mh, true, d0);
    Biv t1 = biv_theta(1, 1, x0, mh, true, d0);
    Biv z = biv_div(t1, t0, d0);
    if (kind == Kind::Zeta1Half) {
      c_ = z;
    } else {
      c_ = biv_x_derivative(z, degree);
      for (auto& row : c_)
        for (auto& v : row) v = -v;
    }
  } else {
    ModularParam mf(tau0, series_tol);
    Biv t10 = biv_theta(1, 0, x0, mf, false, d0);
    Biv t11 = biv_theta(1, 1, x0, mf, false, d0);
    Biv t40 = biv_theta(4, 0, x0, mf, false, d0);
    Biv t41 = biv_theta(4, 1, x0, mf, false, d0);
    Biv z1 = biv_div(t11, t10, d0);
    Biv z4 = biv_div(t41, t40, d0);
    Biv sp = biv_zero(d0);
    for (int r = 0; r <= d0; ++r)
      for (int s = 0; s + r <= d0; ++s) sp[r][s] = z1[r][s] - z4[r][s];
    if (kind == Kind::SPrime) {
      c_ = sp;
    } else {
      c_ = biv_x_derivative(sp, degree);
    }
  }
  c_.resize(deg_ + 1);
  for (auto& row : c_) row.resize(deg_ + 1, Complex{0.0, 0.0});
}

Series BivTable::eval_jet(const Series& dx, const Series& dtau) const {
  const int len = static_cast<int>(dx.size());
  // Horner over dtau of inner Horner over dx.
  Series acc(len, Complex{0.0, 0.0});
  for (int r = deg_; r >= 0; --r) {
    Series inner(len, Complex{0.0, 0.0});
    for (int s = deg_ - r; s >= 0; --s) {
      inner = series_mul(inner, dx, len);
      inner[0] += c_[r][s];
    }
    acc = series_mul(acc, dtau, len);
    for (int i = 0; i < len; ++i) acc[i] += inner[i];
  }
  return acc;
}

}  // namespace edkp
