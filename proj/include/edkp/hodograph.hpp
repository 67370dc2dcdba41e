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

#ifndef EDKP_HODOGRAPH_HPP
#define EDKP_HODOGRAPH_HPP

#include "edkp/metric.hpp"

namespace edkp {

/// Symmetry solution R_i of the linear system dR_i/dlambda_j =
/// Gamma_ij (R_j - R_i), tabulated on the grid. The constant solution is
/// the trivial fixed point.
struct SymmetrySolution {
  bool constant = false;
  double constant_value = 0.0;
  std::vector<std::vector<double>> r;  // per node (field order), size N
};

/// Extract the symmetry solution carried by a field (integrated together
/// with the flow); requires the field's scenario to have with_symmetry.
SymmetrySolution integrate_symmetry(const HydroField& field);

/// FD check of the defining system on the grid interior.
ResidualReport check_symmetry_invariant(const HydroField& field,
                                        double tol = 1e-5);

struct TimePoint {
  double t0 = 0.0;
  std::vector<double> t;  // t_1..t_K
  std::vector<double> lambda;
  bool converged = false;
  int newton_iters = 0;
  double residual = 0.0;
  double max_offdiag_m = 0.0;  // |M_ij|, i != j, at the converged point
};

/// Damped Newton solve of t0 + sum_n phi_{i,n} t_n = R_i for lambda.
/// Throws SingularJacobian / NoConvergence.
TimePoint hodograph_solve(const Scenario& sc, double t0,
                          const std::vector<double>& t,
                          std::vector<double> seed_lambda, double tol = 1e-12,
                          int max_iter = 50);

/// Times (t0, t2..tN) making lambda_star an exact hodograph solution for
/// the carried symmetry data with the given t1. Returns a TimePoint whose
/// t-vector has length K (entries beyond N zero).
TimePoint manufactured_times(const Scenario& sc,
                             const std::vector<double>& lambda_star, double t1,
                             int K);

/// FD check of the evolution law dlambda_i/dt_n = phi_{i,n} dlambda_i/dt0
/// around a base time point (4th-order central differences).
ResidualReport check_hydro_evolution(const Scenario& sc,
                                     const TimePoint& base, int n_max = 2,
                                     double tol = 1e-6);

/// Residual of grad(z1) S(u(z2)) = d_t0 S(u(z1) - u(z2)) with grad
/// truncated at K, t-derivatives by 2nd-order FD through re-solved
/// hodograph points, plus the three-permutation symmetry at a z-triple
/// and the FD convergence factor measured on residual differences.
std::vector<ResidualReport> check_dkp(const Scenario& sc,
                                      const TimePoint& base, int iz1, int iz2,
                                      int iza, int izb, int izc, int K = 6,
                                      double ht = 5e-4, double tol = 1e-5);

/// Pointwise check of p^2 = R^2 (w + 1/w) + V under the theta
/// parametrization with w = exp(-2 S(u)), p = c_1 S'(u).
ResidualReport check_curve(const ULaurent& u, const GTState& s, int samples,
                           std::uint64_t seed, double tol = 1e-10);

/// F_{0n}, n = 0..K, from composing S(u) = log u + (analytic part) with
/// the u-series; F_{00} = log(pi c_1 theta_2(0) theta_3(0)).
std::vector<double> conserved_density_series(const ULaurent& u,
                                             const ModularParam& m, int K);

/// Conserved-quantity checks: the density relation g_j phi_{j,n} =
/// dF_{0n}/dlambda_j (refined-step FD), the second-derivative equation
/// for P = S(u(z)) (grid FD), the f-function == 0 on field states, and
/// the F00 cross-check against the tau-constant form.
std::vector<ResidualReport> check_conserved(const HydroField& field, int K = 6,
                                            double fd_tol = 1e-5,
                                            double f00_tol = 1e-11,
                                            double f_tol = 1e-9);

}  // namespace edkp

#endif  // EDKP_HODOGRAPH_HPP
