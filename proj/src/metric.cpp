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

#include "edkp/metric.hpp"

#include <cmath>
#include <functional>

#include "edkp/identities.hpp"

namespace edkp {

namespace {

std::vector<Complex> real_coeffs(const ULaurent& u) {
  return std::vector<Complex>(u.coeffs.begin(), u.coeffs.end());
}

}  // namespace

Complex q_generating(Complex u, double xi, const ModularParam& m) {
  const Complex sp_u = s_fn(u + xi, m).d1;
  const Complex sp_0 = s_fn(Complex{xi, 0.0}, m).d1;
  return sp_u / sp_0;
}

FaberTable faber_speeds(const ULaurent& u, const GTState& s, int K) {
  const int M = static_cast<int>(u.coeffs.size());
  if (K > M) throw OrderExceeded("Faber order exceeds the u-series order");
  const ModularParam m(s.tau);
  const int N = static_cast<int>(s.xi.size());
  FaberTable t;
  t.order = K;
  t.speeds.assign(N, std::vector<Complex>(K + 1, Complex{0.0, 0.0}));
  auto up = laurent_powers(real_coeffs(u), K);
  for (int j = 0; j < N; ++j) {
    Series sj = s_taylor(Complex{s.xi[j], 0.0}, m, K + 2);
    // Taylor of S'(xi_j + h): coefficient p is (p+1) sj[p+1]
    Series sp(K + 1);
    for (int p = 0; p <= K; ++p) sp[p] = double(p + 1) * sj[p + 1];
    t.speeds[j][0] = 1.0;
    for (int k = 1; k <= K; ++k) {
      Complex qk{0.0, 0.0};
      for (int p = 1; p <= k; ++p) qk += sp[p] * up[p][k];
      t.speeds[j][k] = double(k) * qk / sp[0];
    }
  }
  return t;
}

Complex gamma_closed(const GTState& s, int i, int j) {
  if (i == j) throw Error("gamma_closed requires i != j");
  const ModularParam m(s.tau);
  const Complex spj = s_fn(Complex{s.xi[j], 0.0}, m).d1;
  const Complex spi = s_fn(Complex{s.xi[i], 0.0}, m).d1;
  const Complex s2 = s_fn(Complex{s.xi[i] - s.xi[j], 0.0}, m).d2;
  return -spj / spi * s2 / kFourPiI * s.v[j];
}

Complex gamma_from_ratio(const GTState& s, const ULaurent& u, int i, int j,
                         int sample_index) {
  if (i == j) throw Error("gamma_from_ratio requires i != j");
  const ModularParam m(s.tau);
  const Complex uz = u.samples.at(sample_index).second;
  const Complex xi_i{s.xi[i], 0.0}, xi_j{s.xi[j], 0.0};
  // d/dlambda_j of Q(u, xi_i) by the chain rule through the flow:
  //   dS'(x)/dl_j = S''(x) dx/dl_j + Sdot'(x) v_j
  const Complex du = loewner_rhs_pointwise(uz, s, j);
  const ModularParam mh = m.half();
  const Complex dxi_i = (zeta_a(1, xi_j - xi_i, mh) - zeta_a(1, xi_j, mh)) /
                        kFourPiI * s.v[j];
  const SValue su = s_fn(uz + xi_i, m);
  const SValue s0 = s_fn(xi_i, m);
  const Complex dsp_u = su.d2 * (du + dxi_i) + s_prime_dtau(uz + xi_i, m) * s.v[j];
  const Complex dsp_0 = s0.d2 * dxi_i + s_prime_dtau(xi_i, m) * s.v[j];
  const Complex num = (dsp_u * s0.d1 - su.d1 * dsp_0) / (s0.d1 * s0.d1);
  const Complex qj = s_fn(uz + xi_j, m).d1 / s_fn(xi_j, m).d1;
  const Complex qi = su.d1 / s0.d1;
  if (std::abs(qj - qi) < 1e-12) {
    if (std::abs(num) < 1e-12) return Complex{0.0, 0.0};
    throw DegenerateDenominator("Q_j - Q_i vanished at the sampled z");
  }
  return num / (qj - qi);
}

Complex metric_g(const GTState& s, int i) {
  const ModularParam m(s.tau);
  const Complex sp = s_fn(Complex{s.xi[i], 0.0}, m).d1;
  return sp * sp / kFourPiI * s.v[i];
}

double potential_from_c1(const ULaurent& u, const GTState& s) {
  const ModularParam m(s.tau);
  const double c1 = u.coeffs.at(0);
  if (!(c1 > 0.0)) throw Error("potential requires c_1 > 0");
  const double t2 = theta(2, Complex{0, 0}, m).real();
  const double t3 = theta(3, Complex{0, 0}, m).real();
  return std::log(kPi * c1 * t2 * t3);
}

namespace {

void walk_interior(const HydroField& field,
                   const std::function<void(const std::vector<int>&)>& fn) {
  const Scenario& sc = field.scenario;
  std::vector<int> idx(sc.N, 0);
  std::function<void(int)> rec = [&](int axis) {
    if (axis == sc.N) {
      fn(idx);
      return;
    }
    for (int i = 1; i < sc.grid_nodes - 1; ++i) {
      idx[axis] = i;
      rec(axis + 1);
    }
  };
  rec(0);
}

std::vector<int> shifted(const std::vector<int>& idx, int ax, int d) {
  auto out = idx;
  out[ax] += d;
  return out;
}

}  // namespace

ResidualReport check_gamma_log(const HydroField& field, double tol) {
  const Scenario& sc = field.scenario;
  const double h = sc.grid_spacing;
  ResidualAccumulator acc;
  walk_interior(field, [&](const std::vector<int>& idx) {
    const NodeState& n = field.at(idx);
    for (int i = 0; i < sc.N; ++i) {
      for (int j = 0; j < sc.N; ++j) {
        if (i == j) continue;
        const NodeState& np = field.at(shifted(idx, j, +1));
        const NodeState& nm = field.at(shifted(idx, j, -1));
        const Complex gp = metric_g(np.state, i);
        const Complex gm = metric_g(nm.state, i);
        const Complex fd = 0.5 * (std::log(gp) - std::log(gm)) / (2 * h);
        acc.add(std::abs(fd - gamma_closed(n.state, i, j)));
      }
    }
  });
  return acc.finish("c2_gamma_log_fd", sc.tau0.imag(), tol);
}

ResidualReport check_egorov(const HydroField& field, double tol) {
  const Scenario& sc = field.scenario;
  const double h = sc.grid_spacing;
  ResidualAccumulator acc;
  walk_interior(field, [&](const std::vector<int>& idx) {
    for (int i = 0; i < sc.N; ++i) {
      for (int k = i + 1; k < sc.N; ++k) {
        const Complex a = (metric_g(field.at(shifted(idx, k, +1)).state, i) -
                           metric_g(field.at(shifted(idx, k, -1)).state, i)) /
                          (2 * h);
        const Complex b = (metric_g(field.at(shifted(idx, i, +1)).state, k) -
                           metric_g(field.at(shifted(idx, i, -1)).state, k)) /
                          (2 * h);
        acc.add(std::abs(a - b));
      }
    }
  });
  return acc.finish("q1_egorov_fd", sc.tau0.imag(), tol);
}

ResidualReport check_potential(const HydroField& field, double tol) {
  const Scenario& sc = field.scenario;
  const double h = sc.grid_spacing;
  ResidualAccumulator acc;
  walk_interior(field, [&](const std::vector<int>& idx) {
    const NodeState& n = field.at(idx);
    for (int i = 0; i < sc.N; ++i) {
      const NodeState& np = field.at(shifted(idx, i, +1));
      const NodeState& nm = field.at(shifted(idx, i, -1));
      const double fd = (potential_from_c1(np.u, np.state) -
                         potential_from_c1(nm.u, nm.state)) /
                        (2 * h);
      acc.add(std::abs(Complex{fd, 0.0} - metric_g(n.state, i)));
    }
  });
  return acc.finish("p1_potential_fd", sc.tau0.imag(), tol);
}

std::vector<ResidualReport> check_curvature(const HydroField& field,
                                            double fd_tol, double h_tol) {
  const Scenario& sc = field.scenario;
  if (sc.N < 3)
    throw NotEnoughAxes("curvature relation needs at least three axes");
  const double h = sc.grid_spacing;
  ResidualAccumulator a_curv, a_tsarev, a_h;
  walk_interior(field, [&](const std::vector<int>& idx) {
    const NodeState& n = field.at(idx);
    for (int i = 0; i < sc.N; ++i) {
      for (int j = 0; j < sc.N; ++j) {
        if (j == i) continue;
        for (int k = 0; k < sc.N; ++k) {
          if (k == i || k == j) continue;
          const Complex fdk =
              (gamma_closed(field.at(shifted(idx, k, +1)).state, i, j) -
               gamma_closed(field.at(shifted(idx, k, -1)).state, i, j)) /
              (2 * h);
          const Complex rhs =
              gamma_closed(n.state, i, j) * gamma_closed(n.state, j, k) +
              gamma_closed(n.state, i, k) * gamma_closed(n.state, k, j) -
              gamma_closed(n.state, i, k) * gamma_closed(n.state, i, j);
          a_curv.add(std::abs(fdk - rhs));
          const Complex fdj =
              (gamma_closed(field.at(shifted(idx, j, +1)).state, i, k) -
               gamma_closed(field.at(shifted(idx, j, -1)).state, i, k)) /
              (2 * h);
          a_tsarev.add(std::abs(fdk - fdj));
        }
      }
    }
    const ModularParam m(n.state.tau);
    a_h.add(std::abs(h_function(Complex{n.state.xi[0], 0},
                                Complex{n.state.xi[1], 0},
                                Complex{n.state.xi[2], 0}, m)));
  });
  const double ti = sc.tau0.imag();
  return {a_curv.finish("c101_curvature_fd", ti, fd_tol),
          a_tsarev.finish("c2a_tsarev_fd", ti, fd_tol),
          a_h.finish("h_zero_on_field", ti, h_tol)};
}

std::vector<ResidualReport> check_gamma_routes(const HydroField& field,
                                               double spread_tol,
                                               double match_tol) {
  const Scenario& sc = field.scenario;
  ResidualAccumulator a_spread, a_match;
  for (const NodeState& n : field.nodes) {
    for (int i = 0; i < sc.N; ++i) {
      for (int j = 0; j < sc.N; ++j) {
        if (i == j) continue;
        const Complex gc = gamma_closed(n.state, i, j);
        std::vector<Complex> vals;
        for (size_t s = 0; s < n.u.samples.size(); ++s)
          vals.push_back(gamma_from_ratio(n.state, n.u, i, j, int(s)));
        double spread = 0.0;
        for (size_t a = 0; a < vals.size(); ++a)
          for (size_t b = a + 1; b < vals.size(); ++b)
            spread = std::max(spread, std::abs(vals[a] - vals[b]));
        a_spread.add(spread / std::max(std::abs(gc), 1e-30));
        for (const Complex& vl : vals) a_match.add(std::abs(vl - gc));
      }
    }
  }
  const double ti = sc.tau0.imag();
  return {a_spread.finish("gamma_z_independence", ti, spread_tol),
          a_match.finish("gamma_route_match", ti, match_tol)};
}

}  // namespace edkp
