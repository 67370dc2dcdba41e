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

#include "edkp/hodograph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "edkp/identities.hpp"
#include "edkp/sampling.hpp"

namespace edkp {

namespace {

std::vector<Complex> real_coeffs_of(const ULaurent& u) {
  return std::vector<Complex>(u.coeffs.begin(), u.coeffs.end());
}

// Solve a small dense real system in place (partial pivoting).
std::vector<double> solve_dense(std::vector<std::vector<double>> a,
                                std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-14)
      throw SingularJacobian("hodograph Jacobian is singular");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c2 = col; c2 < n; ++c2) a[r][c2] -= f * a[col][c2];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double acc = b[r];
    for (int c2 = r + 1; c2 < n; ++c2) acc -= a[r][c2] * x[c2];
    x[r] = acc / a[r][r];
  }
  return x;
}

struct HodoEval {
  NodeState node;
  FaberTable faber;
  std::vector<double> residual;
};

HodoEval hodo_eval(const Scenario& sc, double t0, const std::vector<double>& t,
                   const std::vector<double>& lam) {
  HodoEval out;
  out.node = evaluate_at(sc, lam);
  if (out.node.r.empty())
    throw ConfigError("hodograph solve needs a symmetry solution; enable "
                      "with_symmetry in the scenario");
  const int K = static_cast<int>(t.size());
  out.faber = faber_speeds(out.node.u, out.node.state, K);
  out.residual.resize(sc.N);
  for (int i = 0; i < sc.N; ++i) {
    double acc = t0 - out.node.r[i];
    for (int n = 1; n <= K; ++n)
      acc += t[n - 1] * out.faber.speeds[i][n].real();
    out.residual[i] = acc;
  }
  return out;
}

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

SymmetrySolution integrate_symmetry(const HydroField& field) {
  SymmetrySolution out;
  if (field.nodes.empty() || field.nodes.front().r.empty())
    throw ConfigError("field carries no symmetry block");
  out.r.reserve(field.nodes.size());
  for (const auto& n : field.nodes) out.r.push_back(n.r);
  const auto& r0 = out.r.front();
  out.constant = true;
  for (const auto& rn : out.r)
    for (size_t i = 0; i < rn.size(); ++i)
      if (std::abs(rn[i] - r0[0]) > 1e-14) out.constant = false;
  if (out.constant) out.constant_value = r0[0];
  return out;
}

ResidualReport check_symmetry_invariant(const HydroField& field, double tol) {
  const Scenario& sc = field.scenario;
  const double h = sc.grid_spacing;
  ResidualAccumulator acc;
  std::vector<int> idx(sc.N, 0);
  std::function<void(int)> walk = [&](int axis) {
    if (axis == sc.N) {
      const NodeState& n = field.at(idx);
      for (int i = 0; i < sc.N; ++i) {
        for (int j = 0; j < sc.N; ++j) {
          if (i == j) continue;
          auto ip = idx, im = idx;
          ip[j] += 1;
          im[j] -= 1;
          const double fd =
              (field.at(ip).r[i] - field.at(im).r[i]) / (2 * h);
          const Complex closed =
              gamma_closed(n.state, i, j) * (n.r[j] - n.r[i]);
          acc.add(std::abs(Complex{fd, 0.0} - closed));
        }
      }
      return;
    }
    for (int i = 1; i < sc.grid_nodes - 1; ++i) {
      idx[axis] = i;
      walk(axis + 1);
    }
  };
  walk(0);
  return acc.finish("g4_symmetry_fd", sc.tau0.imag(), tol);
}

TimePoint hodograph_solve(const Scenario& sc, double t0,
                          const std::vector<double>& t,
                          std::vector<double> seed_lambda, double tol,
                          int max_iter) {
  const int N = sc.N;
  const int K = static_cast<int>(t.size());
  std::vector<double> lam = std::move(seed_lambda);
  TimePoint out;
  out.t0 = t0;
  out.t = t;
  HodoEval ev = hodo_eval(sc, t0, t, lam);
  for (int iter = 0; iter < max_iter; ++iter) {
    if (sup_norm(ev.residual) < tol) {
      out.lambda = lam;
      out.converged = true;
      out.newton_iters = iter;
      out.residual = sup_norm(ev.residual);
      // off-diagonal M_ij along the solution branch
      double moff = 0.0;
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          if (i == j) continue;
          double bra = ev.node.r[j] - ev.node.r[i];
          for (int n = 1; n <= K; ++n)
            bra -= t[n - 1] * (ev.faber.speeds[j][n].real() -
                               ev.faber.speeds[i][n].real());
          moff = std::max(
              moff, std::abs(gamma_closed(ev.node.state, i, j) * bra));
        }
      out.max_offdiag_m = moff;
      return out;
    }
    // Jacobian: analytic off-diagonal entries through Gamma, FD diagonal.
    std::vector<std::vector<double>> J(N, std::vector<double>(N, 0.0));
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        if (i == j) continue;
        const Complex gam = gamma_closed(ev.node.state, i, j);
        double acc = -(ev.node.r[j] - ev.node.r[i]);
        for (int n = 1; n <= K; ++n)
          acc += t[n - 1] * (ev.faber.speeds[j][n].real() -
                             ev.faber.speeds[i][n].real());
        J[i][j] = (gam * acc).real();
      }
    }
    const double fd_step = 1e-6;
    for (int j = 0; j < N; ++j) {
      auto lp = lam;
      lp[j] += fd_step;
      HodoEval evp = hodo_eval(sc, t0, t, lp);
      J[j][j] = (evp.residual[j] - ev.residual[j]) / fd_step;
    }
    std::vector<double> neg(N);
    for (int i = 0; i < N; ++i) neg[i] = -ev.residual[i];
    std::vector<double> dl = solve_dense(J, neg);
    // damped update: halve until the residual shrinks
    double scale = 1.0;
    const double base = sup_norm(ev.residual);
    for (int half = 0; half < 8; ++half) {
      auto trial = lam;
      for (int i = 0; i < N; ++i) trial[i] += scale * dl[i];
      HodoEval evt = hodo_eval(sc, t0, t, trial);
      if (sup_norm(evt.residual) < base || half == 7) {
        lam = trial;
        ev = std::move(evt);
        break;
      }
      scale /= 2.0;
    }
  }
  throw NoConvergence("hodograph Newton did not converge in " +
                      std::to_string(max_iter) + " iterations");
}

TimePoint manufactured_times(const Scenario& sc,
                             const std::vector<double>& lambda_star, double t1,
                             int K) {
  if (K < sc.N)
    throw ConfigError("manufactured times need K >= N");
  HodoEval ev;
  ev.node = evaluate_at(sc, lambda_star);
  if (ev.node.r.empty())
    throw ConfigError("manufactured times need a symmetry solution");
  FaberTable f = faber_speeds(ev.node.u, ev.node.state, sc.N);
  // unknowns (t0, t2, ..., tN):  t0 + phi_i1 t1 + sum_{n=2..N} phi_in tn = R_i
  std::vector<std::vector<double>> A(sc.N, std::vector<double>(sc.N, 0.0));
  std::vector<double> b(sc.N, 0.0);
  for (int i = 0; i < sc.N; ++i) {
    A[i][0] = 1.0;
    for (int n = 2; n <= sc.N; ++n) A[i][n - 1] = f.speeds[i][n].real();
    b[i] = ev.node.r[i] - f.speeds[i][1].real() * t1;
  }
  std::vector<double> x = solve_dense(A, b);
  TimePoint tp;
  tp.t0 = x[0];
  tp.t.assign(K, 0.0);
  tp.t[0] = t1;
  for (int n = 2; n <= sc.N; ++n) tp.t[n - 1] = x[n - 1];
  tp.lambda = lambda_star;
  return tp;
}

namespace {

// Cache of hodograph solves keyed by the perturbed times.
class SolveCache {
 public:
  SolveCache(const Scenario& sc, const TimePoint& base)
      : sc_(sc), base_(base) {}

  const NodeState& at(double dt0, const std::vector<double>& dt) {
    std::vector<long long> key;
    key.push_back(llround(dt0 * 1e12));
    for (double x : dt) key.push_back(llround(x * 1e12));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<double> t = base_.t;
    for (size_t i = 0; i < dt.size() && i < t.size(); ++i) t[i] += dt[i];
    TimePoint sol =
        hodograph_solve(sc_, base_.t0 + dt0, t, base_.lambda, 1e-13);
    NodeState node = evaluate_at(sc_, sol.lambda);
    return cache_.emplace(std::move(key), std::move(node)).first->second;
  }

 private:
  const Scenario& sc_;
  const TimePoint& base_;
  std::map<std::vector<long long>, NodeState> cache_;
};

Complex s_of_diff(const NodeState& n, int a, int b) {
  const ModularParam m(n.state.tau);
  if (b < 0) return s_fn(n.u.samples[a].second, m).value;
  return s_fn(n.u.samples[a].second - n.u.samples[b].second, m).value;
}

}  // namespace

ResidualReport check_hydro_evolution(const Scenario& sc, const TimePoint& base,
                                     int n_max, double tol) {
  const int K = static_cast<int>(base.t.size());
  SolveCache cache(sc, base);
  // speeds at the base point
  NodeState center = cache.at(0.0, std::vector<double>(K, 0.0));
  FaberTable f = faber_speeds(center.u, center.state, K);
  std::vector<double> scale(K + 1, 1.0);
  for (int n = 1; n <= K; ++n)
    for (int i = 0; i < sc.N; ++i)
      scale[n] = std::max(scale[n], std::abs(f.speeds[i][n]));

  const double eta = 4e-4;
  auto dlam = [&](int n) {
    const double ht = eta / scale[n];
    std::vector<double> out(sc.N, 0.0);
    auto lam_of = [&](double mult) -> std::vector<double> {
      std::vector<double> dt(K, 0.0);
      double dt0 = 0.0;
      if (n == 0)
        dt0 = mult * ht;
      else
        dt[n - 1] = mult * ht;
      const NodeState& node = cache.at(dt0, dt);
      return node.state.lambda;
    };
    auto p2 = lam_of(2.0), p1 = lam_of(1.0), m1 = lam_of(-1.0),
         m2 = lam_of(-2.0);
    for (int i = 0; i < sc.N; ++i)
      out[i] =
          (-p2[i] + 8.0 * p1[i] - 8.0 * m1[i] + m2[i]) / (12.0 * ht);
    return out;
  };
  ResidualAccumulator acc;
  auto d0 = dlam(0);
  for (int n = 1; n <= std::min(n_max, K); ++n) {
    auto dn = dlam(n);
    for (int i = 0; i < sc.N; ++i)
      acc.add(std::abs(dn[i] - f.speeds[i][n].real() * d0[i]));
  }
  return acc.finish("g0_evolution_fd", sc.tau0.imag(), tol);
}

std::vector<ResidualReport> check_dkp(const Scenario& sc,
                                      const TimePoint& base, int iz1, int iz2,
                                      int iza, int izb, int izc, int K,
                                      double ht, double tol) {
  const int KT = static_cast<int>(base.t.size());
  if (K > KT) throw OrderExceeded("grad truncation exceeds time vector");
  SolveCache cache(sc, base);
  NodeState center = cache.at(0.0, std::vector<double>(KT, 0.0));
  FaberTable f = faber_speeds(center.u, center.state, K);
  std::vector<double> scale(K + 1, 1.0);
  for (int n = 1; n <= K; ++n)
    for (int i = 0; i < sc.N; ++i)
      scale[n] = std::max(scale[n], std::abs(f.speeds[i][n]));

  auto dt_of = [&](const std::function<Complex(const NodeState&)>& fun, int n,
                   double step) {
    std::vector<double> dt(KT, 0.0);
    double dt0 = 0.0;
    const double h = n == 0 ? step : step / scale[n];
    if (n == 0)
      dt0 = h;
    else
      dt[n - 1] = h;
    const Complex fp = fun(cache.at(dt0, dt));
    for (auto& x : dt) x = -x;
    const Complex fm = fun(cache.at(-dt0, dt));
    return (fp - fm) / (2.0 * h);
  };
  auto grad_on = [&](const std::function<Complex(const NodeState&)>& fun,
                     Complex z, double step) {
    Complex acc = dt_of(fun, 0, step);
    for (int k = 1; k <= K; ++k)
      acc += std::pow(z, -k) / double(k) * dt_of(fun, k, step);
    return acc;
  };

  const Complex z1 = sc.z_samples.at(iz1);
  auto lhs_fun = [&](const NodeState& n) { return s_of_diff(n, iz2, -1); };
  auto rhs_fun = [&](const NodeState& n) { return s_of_diff(n, iz1, iz2); };
  auto residual_at = [&](double step) {
    return std::abs(grad_on(lhs_fun, z1, step) - dt_of(rhs_fun, 0, step));
  };
  const double r1 = residual_at(ht);
  const double r2 = residual_at(2.0 * ht);
  const double r4 = residual_at(4.0 * ht);
  // convergence factor of the h^2 part, floor-insensitive
  const double ratio = (r4 - r2) / std::max(r2 - r1, 1e-300);

  ResidualAccumulator a12;
  a12.add(r1);
  ResidualAccumulator aconv;
  aconv.add(std::abs(ratio - 4.0));
  // three-fold symmetry at the triple
  const Complex za = sc.z_samples.at(iza), zb = sc.z_samples.at(izb),
                zc = sc.z_samples.at(izc);
  const Complex g1 =
      grad_on([&](const NodeState& n) { return s_of_diff(n, izb, izc); }, za,
              ht);
  const Complex g2 =
      grad_on([&](const NodeState& n) { return s_of_diff(n, iza, izc); }, zb,
              ht);
  const Complex g3 =
      grad_on([&](const NodeState& n) { return s_of_diff(n, iza, izb); }, zc,
              ht);
  ResidualAccumulator a11;
  a11.add(std::max({std::abs(g1 - g2), std::abs(g1 - g3), std::abs(g2 - g3)}));
  const double ti = sc.tau0.imag();
  return {a12.finish("e12_residual", ti, tol),
          aconv.finish("e12_fd_convergence", ti, 0.5),
          a11.finish("e11_symmetry", ti, tol)};
}

ResidualReport check_curve(const ULaurent& u, const GTState& s, int samples,
                           std::uint64_t seed, double tol) {
  const ModularParam m(s.tau);
  const double c1 = u.coeffs.at(0);
  const double t2 = theta(2, Complex{0, 0}, m).real();
  const double t3 = theta(3, Complex{0, 0}, m).real();
  const double R = kPi * c1 * t2 * t3;
  const double V = -(kPi * c1) * (kPi * c1) *
                   (t2 * t2 * t2 * t2 + t3 * t3 * t3 * t3);
  Rng rng(seed);
  ResidualAccumulator acc;
  for (int i = 0; i < samples; ++i) {
    const Complex uu = draw_admissible(rng, s.tau);
    const SValue sv = s_fn(uu, m);
    const Complex w = std::exp(-2.0 * sv.value);
    const Complex p = c1 * sv.d1;
    const Complex lhs = p * p - R * R * (w + 1.0 / w) - V;
    const double scl =
        std::max({std::abs(p * p), std::abs(R * R * w), std::abs(V)});
    acc.add(std::abs(lhs), scl);
  }
  return acc.finish("curve_identity", s.tau.imag(), tol);
}

std::vector<double> conserved_density_series(const ULaurent& u,
                                             const ModularParam& m, int K) {
  const int M = static_cast<int>(u.coeffs.size());
  if (K > M) throw OrderExceeded("density order exceeds the u-series order");
  // A(x) = log(theta_1(x)/x) - log(theta_4(x)), analytic and even at 0.
  Series t1 = theta_taylor(1, Complex{0, 0}, m, K + 2);
  Series t4 = theta_taylor(4, Complex{0, 0}, m, K + 1);
  Series t1x(t1.begin() + 1, t1.end());
  Series A = series_log(t1x, K + 1);
  Series l4 = series_log(t4, K + 1);
  for (int i = 0; i <= K; ++i) A[i] -= l4[i];
  // log(u z) = log c1 + log(1 + sum_{k>=1} (c_{k+1}/c1) z^-k)
  Series g(K + 1, Complex{0.0, 0.0});
  g[0] = 1.0;
  for (int k = 1; k <= K; ++k)
    g[k] = k < M ? Complex{u.coeffs[k] / u.coeffs[0], 0.0} : Complex{0, 0};
  Series lg = series_log(g, K + 1);
  lg[0] += std::log(Complex{u.coeffs[0], 0.0});
  auto up = laurent_powers(real_coeffs_of(u), K);
  Series total = lg;
  total[0] += A[0];
  for (int p = 1; p <= K; ++p)
    for (int k = 1; k <= K; ++k) total[k] += A[p] * up[p][k];
  std::vector<double> out(K + 1, 0.0);
  out[0] = total[0].real();
  for (int n = 1; n <= K; ++n) out[n] = double(n) * total[n].real();
  return out;
}

std::vector<ResidualReport> check_conserved(const HydroField& field, int K,
                                            double fd_tol, double f00_tol,
                                            double f_tol) {
  const Scenario& sc = field.scenario;
  const ModularParam m0(sc.tau0);
  ResidualAccumulator a_f00, a_cq5, a_cq3, a_f;

  // F00 vs the closed form at the base node
  {
    const NodeState& n = field.nodes.front();
    const ModularParam m(n.state.tau);
    auto F = conserved_density_series(n.u, m, K);
    a_f00.add(std::abs(F[0] - potential_from_c1(n.u, n.state)));
  }

  // cq5 with refined-step FD around the grid center
  {
    const double ext = sc.grid_spacing * (sc.grid_nodes - 1);
    std::vector<double> lc(sc.N, ext / 2.0);
    const NodeState c = evaluate_at(sc, lc);
    const FaberTable f = faber_speeds(c.u, c.state, K);
    const double hq = 3e-5;
    for (int j = 0; j < sc.N; ++j) {
      auto lp = lc, lm = lc;
      lp[j] += hq;
      lm[j] -= hq;
      const NodeState np = evaluate_at(sc, lp);
      const NodeState nm = evaluate_at(sc, lm);
      auto Fp = conserved_density_series(np.u, ModularParam(np.state.tau), K);
      auto Fm = conserved_density_series(nm.u, ModularParam(nm.state.tau), K);
      const Complex gj = metric_g(c.state, j);
      a_cq5.add(std::abs(Complex{(Fp[0] - Fm[0]) / (2 * hq), 0} - gj));
      for (int n = 1; n <= K; ++n)
        a_cq5.add(std::abs(Complex{(Fp[n] - Fm[n]) / (2 * hq), 0} -
                           gj * f.speeds[j][n]));
    }
  }

  // cq3 on the grid: mixed FD of S(u(z)) vs Gamma terms
  {
    const double h = sc.grid_spacing;
    std::vector<int> idx(sc.N, 0);
    auto su = [&](const NodeState& n, int s) {
      return s_fn(n.u.samples[s].second, ModularParam(n.state.tau)).value;
    };
    std::function<void(int)> walk = [&](int axis) {
      if (axis == sc.N) {
        const NodeState& n = field.at(idx);
        const int nsamp = std::min<int>(3, n.u.samples.size());
        for (int i = 0; i < sc.N; ++i) {
          for (int j = i + 1; j < sc.N; ++j) {
            for (int s = 0; s < nsamp; ++s) {
              auto ip = idx, im = idx, jp = idx, jm = idx;
              ip[i] += 1;
              im[i] -= 1;
              jp[j] += 1;
              jm[j] -= 1;
              auto ipjp = ip, ipjm = ip, imjp = im, imjm = im;
              ipjp[j] += 1;
              ipjm[j] -= 1;
              imjp[j] += 1;
              imjm[j] -= 1;
              const Complex di =
                  (su(field.at(ip), s) - su(field.at(im), s)) / (2 * h);
              const Complex dj =
                  (su(field.at(jp), s) - su(field.at(jm), s)) / (2 * h);
              const Complex dij =
                  (su(field.at(ipjp), s) - su(field.at(ipjm), s) -
                   su(field.at(imjp), s) + su(field.at(imjm), s)) /
                  (4 * h * h);
              const Complex rhs = gamma_closed(n.state, i, j) * di +
                                  gamma_closed(n.state, j, i) * dj;
              a_cq3.add(std::abs(dij - rhs));
            }
          }
        }
        return;
      }
      for (int i = 1; i < sc.grid_nodes - 1; ++i) {
        idx[axis] = i;
        walk(axis + 1);
      }
    };
    walk(0);
  }

  // f-function == 0 at field states with the first u-sample
  for (const NodeState& n : field.nodes) {
    const ModularParam m(n.state.tau);
    for (int i = 0; i < sc.N; ++i)
      for (int j = 0; j < sc.N; ++j) {
        if (i == j) continue;
        const Complex val =
            f_function(Complex{n.state.xi[i], 0}, Complex{n.state.xi[j], 0},
                       n.u.samples[0].second, m);
        const double scl = std::abs(
            s_fn(Complex{n.state.xi[j], 0}, m).d1 *
            s_fn(n.u.samples[0].second + n.state.xi[j], m).d1 *
            wp_a(1, Complex{n.state.xi[i] - n.state.xi[j], 0}, m.half()));
        a_f.add(std::abs(val), std::max(1.0, scl));
      }
  }

  const double ti = sc.tau0.imag();
  return {a_f00.finish("f00_vs_e8", ti, f00_tol),
          a_cq5.finish("cq5_density_fd", ti, fd_tol),
          a_cq3.finish("cq3_sulog_fd", ti, fd_tol),
          a_f.finish("f_zero_on_field", ti, f_tol)};
}

}  // namespace edkp
