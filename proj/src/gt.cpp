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

#include "edkp/gt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "edkp/sampling.hpp"

namespace edkp {

double Driving::value(double lam) const {
  switch (kind) {
    case Kind::Constant: return a;
    case Kind::Linear: return a + b * lam;
    case Kind::Sinusoid: return a * std::sin(b * lam + c);
  }
  return 0.0;
}

double Driving::deriv(int order, double lam) const {
  if (order <= 0) return value(lam);
  switch (kind) {
    case Kind::Constant: return 0.0;
    case Kind::Linear: return order == 1 ? b : 0.0;
    case Kind::Sinusoid: {
      double bp = 1.0;
      for (int i = 0; i < order; ++i) bp *= b;
      return a * bp * std::sin(b * lam + c + order * kPi / 2.0);
    }
  }
  return 0.0;
}

Scenario Scenario::default_n2() {
  Scenario sc;
  sc.name = "default-n2";
  sc.N = 2;
  sc.tau0 = Complex{0.0, 1.0};
  sc.xi0 = {0.2, 0.6};
  sc.v0 = {Complex{0.0, 0.12}, Complex{0.0, 0.08}};
  sc.d.assign(2, Driving{});
  sc.w.assign(2, Driving{});
  sc.u0_coeffs.assign(8, 0.0);
  sc.u0_coeffs[0] = 0.5;
  sc.z_samples = {Complex{4, 0},  Complex{6, 0},   Complex{10, 0},
                  Complex{8, 2},  Complex{-7, 3},  Complex{24, 0},
                  Complex{-18, 6}};
  sc.grid_spacing = 0.02;
  sc.grid_nodes = 5;
  sc.step = 1e-3;
  sc.r0.assign(2, 0.0);
  return sc;
}

Scenario Scenario::default_n3() {
  Scenario sc = default_n2();
  sc.name = "default-n3";
  sc.N = 3;
  sc.xi0 = {0.15, 0.45, 0.75};
  sc.v0 = {Complex{0.0, 0.04}, Complex{0.0, 0.03}, Complex{0.0, 0.05}};
  sc.d.assign(3, Driving{});
  sc.w.assign(3, Driving{});
  sc.grid_spacing = 0.005;
  sc.r0.assign(3, 0.0);
  return sc;
}

int HydroField::flat(const std::vector<int>& idx) const {
  int f = 0;
  for (size_t ax = 0; ax < idx.size(); ++ax) f = f * shape[ax] + idx[ax];
  return f;
}

const NodeState& HydroField::at(const std::vector<int>& idx) const {
  return nodes[flat(idx)];
}

namespace {

Complex u_series_eval(const std::vector<Complex>& c, Complex z) {
  Complex acc{0.0, 0.0};
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
    acc = (acc + c[k]) / z;
  return acc;
}

Complex u_series_eval(const std::vector<double>& c, Complex z) {
  std::vector<Complex> cc(c.begin(), c.end());
  return u_series_eval(cc, z);
}

void check_collisions(const std::vector<Complex>& xi, Complex tau,
                      double tol) {
  const Complex tp = tau / 2.0;
  const int n = static_cast<int>(xi.size());
  for (int j = 0; j < n; ++j) {
    if (lattice_distance(xi[j], tp) < tol)
      throw CollisionError("xi_" + std::to_string(j + 1) +
                           " too close to a lattice point");
    for (int k = j + 1; k < n; ++k) {
      if (lattice_distance(xi[j] - xi[k], tp) < tol)
        throw CollisionError("xi_" + std::to_string(j + 1) + " and xi_" +
                             std::to_string(k + 1) + " collided");
    }
  }
}

Series const_jet(Complex value, int len) {
  Series s(len, Complex{0.0, 0.0});
  s[0] = value;
  return s;
}

// Jets along one lambda-direction of (tau, xi_m, v_m for all m), built by
// Picard iteration from the diagonal jets of direction `l`.
struct Lift {
  Series tau;
  std::vector<Series> xi, v;
  Series dtau;  // tau jet with constant removed (composition offset)
};

Lift lift_direction(const FlowState& st, int l, const Scenario& sc) {
  const int N = sc.N;
  const int L = sc.jet_order + 1;
  Lift out;
  out.xi.resize(N);
  out.v.resize(N);
  out.tau = series_integrate(st.v[l], st.tau, L);
  out.dtau = out.tau;
  out.dtau[0] = Complex{0.0, 0.0};

  // expansion tables at the point values (fixed during Picard)
  std::vector<BivTable> z_diff;   // zeta_1 at xi_l - xi_m
  std::vector<BivTable> p_diff;   // wp_1 at xi_m - xi_l
  z_diff.reserve(N);
  p_diff.reserve(N);
  const Complex xl = st.xi[l][0];
  BivTable z_l(BivTable::Kind::Zeta1Half, xl, st.tau, sc.jet_order);
  for (int mth = 0; mth < N; ++mth) {
    if (mth == l) {
      z_diff.emplace_back(z_l);  // placeholder, unused
      p_diff.emplace_back(z_l);
      continue;
    }
    z_diff.emplace_back(BivTable::Kind::Zeta1Half, xl - st.xi[mth][0], st.tau,
                        sc.jet_order);
    p_diff.emplace_back(BivTable::Kind::Wp1Half, st.xi[mth][0] - xl, st.tau,
                        sc.jet_order);
  }

  for (int mth = 0; mth < N; ++mth) {
    out.xi[mth] = const_jet(st.xi[mth][0], L);
    out.v[mth] = const_jet(st.v[mth][0], L);
  }
  out.xi[l] = st.xi[l];
  out.v[l] = st.v[l];

  for (int it = 0; it < sc.jet_order; ++it) {
    std::vector<Series> nxi(N), nv(N);
    Series dxl = out.xi[l];
    dxl[0] = Complex{0.0, 0.0};
    Series zl_jet = z_l.eval_jet(dxl, out.dtau);
    for (int mth = 0; mth < N; ++mth) {
      if (mth == l) {
        nxi[mth] = st.xi[l];
        nv[mth] = st.v[l];
        continue;
      }
      // dxi_m/dl_l = (Z(xi_l - xi_m) - Z(xi_l)) v_l / (4 pi i)
      Series dd(L, Complex{0.0, 0.0});
      for (int i = 0; i < L; ++i) dd[i] = out.xi[l][i] - out.xi[mth][i];
      dd[0] = Complex{0.0, 0.0};
      Series zj = z_diff[mth].eval_jet(dd, out.dtau);
      for (int i = 0; i < L; ++i) zj[i] -= zl_jet[i];
      Series rhs = series_mul(zj, out.v[l], L);
      for (auto& x : rhs) x /= kFourPiI;
      nxi[mth] = series_integrate(rhs, st.xi[mth][0], L);
      // dv_m/dl_l = wp(xi_m - xi_l) v_m v_l / (2 pi i)
      Series dm(L, Complex{0.0, 0.0});
      for (int i = 0; i < L; ++i) dm[i] = out.xi[mth][i] - out.xi[l][i];
      dm[0] = Complex{0.0, 0.0};
      Series wj = p_diff[mth].eval_jet(dm, out.dtau);
      Series rv = series_mul(series_mul(wj, out.v[mth], L), out.v[l], L);
      for (auto& x : rv) x /= kTwoPiI;
      nv[mth] = series_integrate(rv, st.v[mth][0], L);
    }
    out.xi = std::move(nxi);
    out.v = std::move(nv);
  }
  return out;
}

struct FlowDeriv {
  Complex tau;
  std::vector<Series> xi, v, r;
  std::vector<Complex> coeff, usamp;
};

FlowDeriv flow_rhs(const FlowState& st, int axis, const Scenario& sc) {
  const int N = sc.N;
  const int L = sc.jet_order + 1;
  const int M = static_cast<int>(st.coeff.size());
  FlowDeriv d;
  d.xi.assign(N, Series(L, Complex{0.0, 0.0}));
  d.v.assign(N, Series(L, Complex{0.0, 0.0}));
  if (!st.r.empty()) d.r.assign(N, Series(L, Complex{0.0, 0.0}));

  std::vector<Complex> xip(N);
  for (int k = 0; k < N; ++k) xip[k] = st.xi[k][0];
  check_collisions(xip, st.tau, sc.collision_tol);

  const ModularParam m(st.tau);
  const ModularParam mh = m.half();
  const Complex vax = st.v[axis][0];
  const double lam_ax = st.lambda[axis];
  d.tau = vax;

  // diagonal jets of the leg axis advance by shifting; the truncated top
  // slot is refilled from the driving's own derivative
  d.xi[axis] = series_derive(st.xi[axis], L);
  d.xi[axis][L - 1] = sc.d[axis].deriv(sc.jet_order, lam_ax);
  for (int i = 2; i <= sc.jet_order; ++i) d.xi[axis][L - 1] /= double(i);
  d.v[axis] = series_derive(st.v[axis], L);
  {
    double wtop = sc.w[axis].deriv(sc.jet_order, lam_ax);
    for (int i = 2; i <= sc.jet_order; ++i) wtop /= double(i);
    d.v[axis][L - 1] = Complex{0.0, wtop};
  }

  const Complex x_ax = st.xi[axis][0];
  for (int k = 0; k < N; ++k) {
    if (k == axis) continue;
    Lift lf = lift_direction(st, k, sc);
    // transported diagonal jets: lambda_k-jets of the axis-direction
    // cross-derivative expressions
    BivTable z1(BivTable::Kind::Zeta1Half, x_ax - xip[k], st.tau,
                sc.jet_order);
    BivTable z2(BivTable::Kind::Zeta1Half, x_ax, st.tau, sc.jet_order);
    Series d1(L, Complex{0.0, 0.0}), d2(L, Complex{0.0, 0.0});
    for (int i = 0; i < L; ++i) {
      d1[i] = lf.xi[axis][i] - lf.xi[k][i];
      d2[i] = lf.xi[axis][i];
    }
    d1[0] = d2[0] = Complex{0.0, 0.0};
    Series za = z1.eval_jet(d1, lf.dtau);
    Series zb = z2.eval_jet(d2, lf.dtau);
    for (int i = 0; i < L; ++i) za[i] -= zb[i];
    Series rx = series_mul(za, lf.v[axis], L);
    for (auto& x : rx) x /= kFourPiI;
    d.xi[k] = rx;

    BivTable pw(BivTable::Kind::Wp1Half, xip[k] - x_ax, st.tau, sc.jet_order);
    Series dm(L, Complex{0.0, 0.0});
    for (int i = 0; i < L; ++i) dm[i] = lf.xi[k][i] - lf.xi[axis][i];
    dm[0] = Complex{0.0, 0.0};
    Series wj = pw.eval_jet(dm, lf.dtau);
    Series rv = series_mul(series_mul(wj, lf.v[k], L), lf.v[axis], L);
    for (auto& x : rv) x /= kTwoPiI;
    d.v[k] = rv;

    if (!st.r.empty()) {
      // dR_k/dl_axis = Gamma_{k,axis} (R_axis - R_k), as a lambda_k-jet.
      BivTable sp_ax(BivTable::Kind::SPrime, x_ax, st.tau, sc.jet_order);
      BivTable sp_k(BivTable::Kind::SPrime, xip[k], st.tau, sc.jet_order);
      BivTable s2_ka(BivTable::Kind::SSecond, xip[k] - x_ax, st.tau,
                     sc.jet_order);
      Series dxa = d2;  // lf.xi[axis] offset
      Series dxk(L, Complex{0.0, 0.0});
      for (int i = 0; i < L; ++i) dxk[i] = lf.xi[k][i];
      dxk[0] = Complex{0.0, 0.0};
      Series s1a = sp_ax.eval_jet(dxa, lf.dtau);
      Series s1k = sp_k.eval_jet(dxk, lf.dtau);
      Series dka(L, Complex{0.0, 0.0});
      for (int i = 0; i < L; ++i) dka[i] = lf.xi[k][i] - lf.xi[axis][i];
      dka[0] = Complex{0.0, 0.0};
      Series s2 = s2_ka.eval_jet(dka, lf.dtau);
      // Gamma_{k,axis} = -(S'(x_ax)/S'(x_k)) S''(x_k - x_ax) v_axis/(4 pi i)
      Series gam =
          series_mul(series_mul(series_div(s1a, s1k, L), s2, L), lf.v[axis], L);
      for (auto& x : gam) x /= -kFourPiI;
      // R_axis jet along lambda_k by Picard with Gamma_{axis,k}
      BivTable s2_ak(BivTable::Kind::SSecond, x_ax - xip[k], st.tau,
                     sc.jet_order);
      Series dak(L, Complex{0.0, 0.0});
      for (int i = 0; i < L; ++i) dak[i] = lf.xi[axis][i] - lf.xi[k][i];
      dak[0] = Complex{0.0, 0.0};
      Series s2b = s2_ak.eval_jet(dak, lf.dtau);
      Series gam_ak =
          series_mul(series_mul(series_div(s1k, s1a, L), s2b, L), lf.v[k], L);
      for (auto& x : gam_ak) x /= -kFourPiI;
      Series Rk = st.r[k];
      Series Ra = const_jet(st.r[axis][0], L);
      for (int it = 0; it < sc.jet_order; ++it) {
        Series diff(L, Complex{0.0, 0.0});
        for (int i = 0; i < L; ++i) diff[i] = Rk[i] - Ra[i];
        Ra = series_integrate(series_mul(gam_ak, diff, L), st.r[axis][0], L);
      }
      Series diff(L, Complex{0.0, 0.0});
      for (int i = 0; i < L; ++i) diff[i] = Ra[i] - Rk[i];
      d.r[k] = series_mul(gam, diff, L);
    }
  }
  if (!st.r.empty()) {
    d.r[axis] = series_derive(st.r[axis], L);
    double rtop = sc.r_driving.deriv(sc.jet_order, lam_ax);
    for (int i = 2; i <= sc.jet_order; ++i) rtop /= double(i);
    d.r[axis][L - 1] = rtop;
  }

  // Laurent coefficients: compose the expansion of
  // -zeta_1(u + xi_axis) + zeta_1(xi_axis) with the u-series.
  d.coeff.assign(M, Complex{0.0, 0.0});
  if (M > 0) {
    Series zt = zeta1_taylor(x_ax, mh, M + 1);
    auto up = laurent_powers(st.coeff, M);
    for (int p = 1; p <= M; ++p) {
      const Complex ap = -zt[p];
      for (int k = 1; k <= M; ++k) d.coeff[k - 1] += ap * up[p][k];
    }
    for (auto& x : d.coeff) x *= vax / kFourPiI;
  }

  // pointwise samples
  const Complex z_at_xi = zeta_a(1, x_ax, mh);
  d.usamp.resize(st.usamp.size());
  for (size_t s = 0; s < st.usamp.size(); ++s)
    d.usamp[s] =
        (-zeta_a(1, st.usamp[s] + x_ax, mh) + z_at_xi) / kFourPiI * vax;
  return d;
}

void axpy(FlowState& s, double h, const FlowDeriv& d, int axis) {
  const int L = static_cast<int>(s.xi[0].size());
  s.tau += h * d.tau;
  for (size_t k = 0; k < s.xi.size(); ++k)
    for (int i = 0; i < L; ++i) {
      s.xi[k][i] += h * d.xi[k][i];
      s.v[k][i] += h * d.v[k][i];
    }
  for (size_t k = 0; k < s.r.size(); ++k)
    for (int i = 0; i < L; ++i) s.r[k][i] += h * d.r[k][i];
  for (size_t k = 0; k < s.coeff.size(); ++k) s.coeff[k] += h * d.coeff[k];
  for (size_t k = 0; k < s.usamp.size(); ++k) s.usamp[k] += h * d.usamp[k];
  s.lambda[axis] += h;
}

}  // namespace

FlowState initial_state(const Scenario& sc) {
  if (static_cast<int>(sc.xi0.size()) != sc.N ||
      static_cast<int>(sc.v0.size()) != sc.N)
    throw ConfigError("scenario xi0/v0 must have N entries");
  FlowState st;
  const int L = sc.jet_order + 1;
  st.tau = sc.tau0;
  st.lambda.assign(sc.N, 0.0);
  st.xi.resize(sc.N);
  st.v.resize(sc.N);
  for (int k = 0; k < sc.N; ++k) {
    st.xi[k] = const_jet(Complex{sc.xi0[k], 0.0}, L);
    st.v[k] = const_jet(sc.v0[k], L);
    // on-axis Goursat data: jet coefficient p is the (p-1)-th derivative
    // of the driving over p!
    double fact = 1.0;
    for (int p = 1; p < L; ++p) {
      fact *= double(p);
      st.xi[k][p] = Complex{sc.d[k].deriv(p - 1, 0.0) / fact, 0.0};
      st.v[k][p] = Complex{0.0, sc.w[k].deriv(p - 1, 0.0) / fact};
    }
  }
  if (sc.with_symmetry) {
    st.r.resize(sc.N);
    for (int k = 0; k < sc.N; ++k) {
      st.r[k] = const_jet(
          Complex{sc.r0.empty() ? 0.0 : sc.r0[k], 0.0}, L);
      double fact = 1.0;
      for (int p = 1; p < L; ++p) {
        fact *= double(p);
        st.r[k][p] = Complex{sc.r_driving.deriv(p - 1, 0.0) / fact, 0.0};
      }
    }
  }
  st.coeff.assign(sc.u0_coeffs.begin(), sc.u0_coeffs.end());
  st.usamp.resize(sc.z_samples.size());
  for (size_t s = 0; s < sc.z_samples.size(); ++s)
    st.usamp[s] = u_series_eval(st.coeff, sc.z_samples[s]);
  return st;
}

void rk4_leg(FlowState& s, int axis, double dist, const Scenario& sc) {
  if (dist == 0.0) return;
  const int n = std::max(1, static_cast<int>(std::ceil(std::abs(dist) / sc.step)));
  const double h = dist / n;
  for (int i = 0; i < n; ++i) {
    FlowState s2 = s, s3 = s, s4 = s;
    FlowDeriv k1 = flow_rhs(s, axis, sc);
    axpy(s2, h / 2, k1, axis);
    FlowDeriv k2 = flow_rhs(s2, axis, sc);
    axpy(s3, h / 2, k2, axis);
    FlowDeriv k3 = flow_rhs(s3, axis, sc);
    axpy(s4, h, k3, axis);
    FlowDeriv k4 = flow_rhs(s4, axis, sc);
    axpy(s, h / 6, k1, axis);
    axpy(s, h / 3, k2, axis);
    axpy(s, h / 3, k3, axis);
    axpy(s, h / 6, k4, axis);
  }
}

NodeState FlowState::snapshot(const Scenario& sc) const {
  NodeState n;
  n.state.tau = tau;
  n.state.lambda = lambda;
  double drift = std::abs(tau.real());
  n.state.xi.resize(sc.N);
  n.state.v.resize(sc.N);
  for (int k = 0; k < sc.N; ++k) {
    n.state.xi[k] = xi[k][0].real();
    drift = std::max(drift, std::abs(xi[k][0].imag()));
    n.state.v[k] = v[k][0];
    drift = std::max(drift, std::abs(v[k][0].real()));
  }
  n.u.coeffs.resize(coeff.size());
  for (size_t k = 0; k < coeff.size(); ++k) {
    n.u.coeffs[k] = coeff[k].real();
    drift = std::max(drift, std::abs(coeff[k].imag()));
  }
  n.u.samples.resize(usamp.size());
  for (size_t s = 0; s < usamp.size(); ++s)
    n.u.samples[s] = {sc.z_samples[s], usamp[s]};
  if (!r.empty()) {
    n.r.resize(sc.N);
    for (int k = 0; k < sc.N; ++k) {
      n.r[k] = r[k][0].real();
      drift = std::max(drift, std::abs(r[k][0].imag()));
    }
  }
  n.reality_drift = drift;
  return n;
}

FlowState evaluate_flow(const Scenario& sc, const std::vector<double>& lam) {
  FlowState st = initial_state(sc);
  for (int ax = 0; ax < sc.N; ++ax)
    if (lam[ax] != 0.0) rk4_leg(st, ax, lam[ax], sc);
  return st;
}

NodeState evaluate_at(const Scenario& sc, const std::vector<double>& lam) {
  return evaluate_flow(sc, lam).snapshot(sc);
}

PathResult integrate_staircase(
    const Scenario& sc, const std::vector<std::pair<int, double>>& path) {
  FlowState st = initial_state(sc);
  PathResult out;
  out.nodes.push_back(st.snapshot(sc));
  for (auto [axis, target] : path) {
    if (axis < 0 || axis >= sc.N) throw ConfigError("path axis out of range");
    const double dist = target - st.lambda[axis];
    // record grid-aligned nodes crossed along the leg
    const double h = sc.grid_spacing;
    int steps = static_cast<int>(std::floor(std::abs(dist) / h + 1e-12));
    const double sgn = dist >= 0 ? 1.0 : -1.0;
    for (int i = 0; i < steps; ++i) {
      rk4_leg(st, axis, sgn * h, sc);
      out.nodes.push_back(st.snapshot(sc));
    }
    const double rem = target - st.lambda[axis];
    if (std::abs(rem) > 1e-12) rk4_leg(st, axis, rem, sc);
  }
  out.final_state = st.snapshot(sc);
  return out;
}

HydroField integrate_grid(const Scenario& sc) {
  HydroField field;
  field.scenario = sc;
  field.shape.assign(sc.N, sc.grid_nodes);
  int total = 1;
  for (int ax = 0; ax < sc.N; ++ax) total *= sc.grid_nodes;
  field.nodes.resize(total);

  std::vector<int> idx(sc.N, 0);
  std::function<void(int, FlowState&)> fill = [&](int axis, FlowState& st) {
    if (axis == sc.N) {
      NodeState n = st.snapshot(sc);
      field.max_reality_drift =
          std::max(field.max_reality_drift, n.reality_drift);
      const int M = static_cast<int>(n.u.coeffs.size());
      if (M > 0)
        field.tail_health =
            std::max(field.tail_health, std::abs(n.u.coeffs[M - 1]) /
                                            std::pow(sc.z_min, M));
      for (size_t s = 0; s < n.u.samples.size(); ++s) {
        if (std::abs(n.u.samples[s].first) < sc.z_min) continue;
        const Complex us = u_series_eval(n.u.coeffs, n.u.samples[s].first);
        field.max_series_mismatch = std::max(
            field.max_series_mismatch, std::abs(us - n.u.samples[s].second));
      }
      field.nodes[field.flat(idx)] = std::move(n);
      return;
    }
    FlowState cur = st;
    for (int i = 0; i < sc.grid_nodes; ++i) {
      if (i > 0) rk4_leg(cur, axis, sc.grid_spacing, sc);
      idx[axis] = i;
      fill(axis + 1, cur);
    }
  };
  FlowState st0 = initial_state(sc);
  fill(0, st0);
  return field;
}

GTDerivative gt_direction_derivative(const GTState& s, int axis,
                                     const std::vector<Driving>& d,
                                     const std::vector<Driving>& w) {
  const int N = static_cast<int>(s.xi.size());
  std::vector<Complex> xic(s.xi.begin(), s.xi.end());
  check_collisions(xic, s.tau, 1e-3);
  const ModularParam mh = ModularParam(s.tau).half();
  GTDerivative out;
  out.dxi.assign(N, Complex{0.0, 0.0});
  out.dv.assign(N, Complex{0.0, 0.0});
  out.dtau = s.v[axis];
  const Complex z_ax = zeta_a(1, s.xi[axis], mh);
  for (int k = 0; k < N; ++k) {
    if (k == axis) {
      const double lam = s.lambda.empty() ? 0.0 : s.lambda[axis];
      out.dxi[k] = Complex{d[axis].value(lam), 0.0};
      out.dv[k] = Complex{0.0, w[axis].value(lam)};
      continue;
    }
    out.dxi[k] = (zeta_a(1, s.xi[axis] - s.xi[k], mh) - z_ax) / kFourPiI *
                 s.v[axis];
    out.dv[k] =
        wp_a(1, s.xi[k] - s.xi[axis], mh) / kTwoPiI * s.v[k] * s.v[axis];
  }
  return out;
}

Complex loewner_rhs_pointwise(Complex u, const GTState& s, int j) {
  const ModularParam mh = ModularParam(s.tau).half();
  return (-zeta_a(1, u + s.xi[j], mh) + zeta_a(1, s.xi[j], mh)) / kFourPiI *
         s.v[j];
}

std::vector<Complex> loewner_rhs_series(const std::vector<Complex>& coeffs,
                                        const GTState& s, int j, int M) {
  if (M > static_cast<int>(coeffs.size()))
    throw OrderExceeded("series order exceeds stored coefficients");
  const ModularParam mh = ModularParam(s.tau).half();
  Series zt = zeta1_taylor(Complex{s.xi[j], 0.0}, mh, M + 1);
  auto up = laurent_powers(coeffs, M);
  std::vector<Complex> out(M, Complex{0.0, 0.0});
  for (int p = 1; p <= M; ++p)
    for (int k = 1; k <= M; ++k) out[k - 1] += -zt[p] * up[p][k];
  for (auto& x : out) x *= s.v[j] / kFourPiI;
  return out;
}

Complex f_jk_evaluate(const GTState& s, const CrossData& cross, Complex u,
                      int j, int k) {
  const ModularParam mh = ModularParam(s.tau).half();
  const Complex xj = s.xi[j], xk = s.xi[k];
  if (theta_zero_distance(1, u + xj, mh) < kPoleRadius ||
      theta_zero_distance(1, u + xk, mh) < kPoleRadius)
    throw PoleProximity("u too close to -xi_j or -xi_k");
  auto z1 = [&](Complex x) { return zeta_a(1, x, mh); };
  auto p1 = [&](Complex x) { return wp_a(1, x, mh); };
  auto p1p = [&](Complex x) { return wp_a_prime(1, x, mh); };
  const Complex F1_jk = (p1(u + xk) - p1(xk)) / kFourPiI;
  const Complex F1_kj = (p1(u + xj) - p1(xj)) / kFourPiI;
  const Complex F2 =
      (-z1(u + xk) + z1(xk) + z1(u + xj) - z1(xj)) / kFourPiI;
  const Complex ff = kFourPiI * kFourPiI;
  const Complex G =
      (p1p(u + xk) - p1p(u + xj) - p1p(xk) + p1p(xj)) / (2.0 * ff) +
      (z1(u + xk) - z1(u + xj) + z1(xj)) * p1(u + xk) / ff -
      (z1(u + xj) - z1(u + xk) + z1(xk)) * p1(u + xj) / ff +
      (-z1(xk) * p1(xk) + z1(xj) * p1(xj)) / ff;
  return F1_jk * cross.dxi_k_dl_j * s.v[k] -
         F1_kj * cross.dxi_j_dl_k * s.v[j] + F2 * cross.d2tau +
         G * s.v[j] * s.v[k];
}

std::vector<ResidualReport> check_gt_fd(const HydroField& field, double tol) {
  const Scenario& sc = field.scenario;
  const double h = sc.grid_spacing;
  const int nn = sc.grid_nodes;
  ResidualAccumulator a_gt1, a_gt2, a_mixed;
  std::vector<int> idx(sc.N, 0);
  std::function<void(int)> walk = [&](int axis) {
    if (axis == sc.N) {
      const NodeState& n = field.at(idx);
      const ModularParam mh = ModularParam(n.state.tau).half();
      for (int j = 0; j < sc.N; ++j) {
        auto ip = idx, im = idx;
        ip[j] += 1;
        im[j] -= 1;
        const NodeState& np = field.at(ip);
        const NodeState& nm = field.at(im);
        for (int k = 0; k < sc.N; ++k) {
          if (k == j) continue;
          const Complex fd =
              Complex{(np.state.xi[k] - nm.state.xi[k]) / (2 * h), 0.0};
          const Complex closed =
              (zeta_a(1, Complex{n.state.xi[j] - n.state.xi[k], 0}, mh) -
               zeta_a(1, Complex{n.state.xi[j], 0}, mh)) /
              kFourPiI * n.state.v[j];
          a_gt1.add(std::abs(fd - closed));
          const Complex fdv = (np.state.v[k] - nm.state.v[k]) / (2 * h);
          const Complex closed2 =
              wp_a(1, Complex{n.state.xi[k] - n.state.xi[j], 0}, mh) /
              kTwoPiI * n.state.v[k] * n.state.v[j];
          a_gt2.add(std::abs(fdv - closed2));
          // mixed second derivative of tau in (j, k)
          auto ipp = idx, ipm = idx, imp = idx, imm = idx;
          ipp[j] += 1; ipp[k] += 1;
          ipm[j] += 1; ipm[k] -= 1;
          imp[j] -= 1; imp[k] += 1;
          imm[j] -= 1; imm[k] -= 1;
          const Complex mixed =
              (field.at(ipp).state.tau - field.at(ipm).state.tau -
               field.at(imp).state.tau + field.at(imm).state.tau) /
              (4 * h * h);
          a_mixed.add(std::abs(mixed - closed2));
        }
      }
      return;
    }
    for (int i = 1; i < nn - 1; ++i) {
      idx[axis] = i;
      walk(axis + 1);
    }
  };
  walk(0);
  const double ti = sc.tau0.imag();
  return {a_gt1.finish("gt1_fd", ti, tol), a_gt2.finish("gt2_fd_v", ti, tol),
          a_mixed.finish("gt2_fd_mixed_tau", ti, tol)};
}

ResidualReport check_fjk(const GTState& s, int samples, std::uint64_t seed,
                         double tol) {
  const ModularParam m(s.tau);
  const ModularParam mh = m.half();
  Rng rng(seed);
  ResidualAccumulator acc;
  const int N = static_cast<int>(s.xi.size());
  for (int i = 0; i < samples; ++i) {
    Complex u;
    for (;;) {
      u = draw_admissible(rng, s.tau);
      bool ok = true;
      for (int j = 0; j < N; ++j)
        if (theta_zero_distance(1, u + s.xi[j], mh) < kSampleExclusion)
          ok = false;
      if (ok) break;
    }
    for (int j = 0; j < N; ++j) {
      for (int k = 0; k < N; ++k) {
        if (j == k) continue;
        CrossData cross;
        cross.dxi_k_dl_j =
            (zeta_a(1, Complex{s.xi[j] - s.xi[k], 0}, mh) -
             zeta_a(1, Complex{s.xi[j], 0}, mh)) /
            kFourPiI * s.v[j];
        cross.dxi_j_dl_k =
            (zeta_a(1, Complex{s.xi[k] - s.xi[j], 0}, mh) -
             zeta_a(1, Complex{s.xi[k], 0}, mh)) /
            kFourPiI * s.v[k];
        cross.d2tau = wp_a(1, Complex{s.xi[j] - s.xi[k], 0}, mh) / kTwoPiI *
                      s.v[j] * s.v[k];
        acc.add(std::abs(f_jk_evaluate(s, cross, u, j, k)));
      }
    }
  }
  return acc.finish("fjk_gt_substituted", s.tau.imag(), tol);
}

ResidualReport check_path_independence(const Scenario& sc, double tol) {
  const double ext = sc.grid_spacing * (sc.grid_nodes - 1);
  std::vector<std::pair<int, double>> fwd, rev;
  for (int ax = 0; ax < sc.N; ++ax) fwd.push_back({ax, ext});
  for (int ax = sc.N - 1; ax >= 0; --ax) rev.push_back({ax, ext});
  Scenario sp = sc;
  sp.with_symmetry = true;
  const NodeState a = integrate_staircase(sp, fwd).final_state;
  const NodeState b = integrate_staircase(sp, rev).final_state;
  ResidualAccumulator acc;
  acc.add(std::abs(a.state.tau - b.state.tau));
  for (int k = 0; k < sc.N; ++k)
    acc.add(std::abs(a.state.xi[k] - b.state.xi[k]));
  for (size_t s = 0; s < a.u.samples.size(); ++s)
    acc.add(std::abs(a.u.samples[s].second - b.u.samples[s].second));
  for (int k = 0; k < sc.N && !a.r.empty() && !b.r.empty(); ++k)
    acc.add(std::abs(a.r[k] - b.r[k]));
  return acc.finish("path_independence", sc.tau0.imag(), tol);
}

ResidualReport check_f201(const HydroField& field, int s1, int s2,
                          double tol) {
  const Scenario& sc = field.scenario;
  const double h = sc.grid_spacing;
  const int nn = sc.grid_nodes;
  ResidualAccumulator acc;
  std::vector<int> idx(sc.N, 0);
  auto sdiff = [&](const NodeState& n) {
    const ModularParam m(n.state.tau);
    return s_fn(n.u.samples[s1].second - n.u.samples[s2].second, m).value;
  };
  auto s_single = [&](const NodeState& n) {
    const ModularParam m(n.state.tau);
    return s_fn(n.u.samples[s1].second, m).value;
  };
  std::function<void(int)> walk = [&](int axis) {
    if (axis == sc.N) {
      const NodeState& n = field.at(idx);
      const ModularParam m(n.state.tau);
      for (int j = 0; j < sc.N; ++j) {
        auto ip = idx, im = idx;
        ip[j] += 1;
        im[j] -= 1;
        const Complex u1 = n.u.samples[s1].second;
        const Complex u2 = n.u.samples[s2].second;
        const Complex fd =
            (sdiff(field.at(ip)) - sdiff(field.at(im))) / (2 * h);
        const Complex closed = s_fn(u1 + n.state.xi[j], m).d1 *
                               s_fn(u2 + n.state.xi[j], m).d1 / kFourPiI *
                               n.state.v[j];
        acc.add(std::abs(fd - closed));
        // z2 -> infinity variant on the single sample
        const Complex fd2 =
            (s_single(field.at(ip)) - s_single(field.at(im))) / (2 * h);
        const Complex closed2 = s_fn(Complex{n.state.xi[j], 0}, m).d1 *
                                s_fn(u1 + n.state.xi[j], m).d1 / kFourPiI *
                                n.state.v[j];
        acc.add(std::abs(fd2 - closed2));
      }
      return;
    }
    for (int i = 1; i < nn - 1; ++i) {
      idx[axis] = i;
      walk(axis + 1);
    }
  };
  walk(0);
  return acc.finish("f201_fd", sc.tau0.imag(), tol);
}

std::vector<ResidualReport> check_field_health(const HydroField& field,
                                               double reality_tol,
                                               double series_tol) {
  ResidualAccumulator drift, series, tail;
  drift.add(field.max_reality_drift);
  series.add(field.max_series_mismatch);
  tail.add(field.tail_health);
  const double ti = field.scenario.tau0.imag();
  return {drift.finish("reality_preservation", ti, reality_tol),
          series.finish("series_pointwise_consistency", ti, series_tol),
          tail.finish("tail_health", ti, series_tol)};
}

}  // namespace edkp
