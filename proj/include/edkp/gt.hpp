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

#ifndef EDKP_GT_HPP
#define EDKP_GT_HPP

#include <string>
#include <vector>

#include "edkp/elliptic.hpp"
#include "edkp/report.hpp"
#include "edkp/series.hpp"

namespace edkp {

/// Free diagonal data along an axis: a named closed form of one variable.
struct Driving {
  enum class Kind { Constant, Linear, Sinusoid };
  Kind kind = Kind::Constant;
  double a = 0.0, b = 0.0, c = 0.0;

  // constant: a ; linear: a + b*lam ; sinusoid: a*sin(b*lam + c)
  double value(double lam) const;
  double deriv(int order, double lam) const;
};

/// Reduction state at a point of lambda-space.
struct GTState {
  Complex tau;
  std::vector<double> xi;
  std::vector<Complex> v;  // v_j = dtau/dlambda_j, purely imaginary
  std::vector<double> lambda;
};

/// Truncated Laurent data of u(z) plus pointwise samples.
struct ULaurent {
  std::vector<double> coeffs;  // c_1..c_M
  std::vector<std::pair<Complex, Complex>> samples;  // (z, u(z))
};

struct NodeState {
  GTState state;
  ULaurent u;
  std::vector<double> r;  // symmetry solution values (empty if not carried)
  double reality_drift = 0.0;
};

struct Scenario {
  std::string name = "custom";
  int N = 2;
  Complex tau0{0.0, 1.0};
  std::vector<double> xi0;
  std::vector<Complex> v0;
  std::vector<Driving> d;  // dxi_k/dlambda_k on the k-axis
  std::vector<Driving> w;  // Im part of dv_k/dlambda_k on the k-axis
  std::vector<double> u0_coeffs;
  std::vector<Complex> z_samples;
  double grid_spacing = 0.02;
  int grid_nodes = 5;
  double step = 1e-3;
  double z_min = 3.0;
  int jet_order = 3;  // prolongation depth of the transported diagonal jets
  double collision_tol = 1e-3;
  bool with_symmetry = true;
  Driving r_driving{Driving::Kind::Constant, 1.0, 0.0, 0.0};
  std::vector<double> r0;  // initial symmetry values at the base node

  static Scenario default_n2();
  static Scenario default_n3();
};

struct HydroField {
  Scenario scenario;
  std::vector<int> shape;        // grid_nodes per axis
  std::vector<NodeState> nodes;  // row-major over shape
  double max_reality_drift = 0.0;
  double max_series_mismatch = 0.0;  // series vs pointwise u at samples
  double tail_health = 0.0;          // max |c_M| / z_min^M over nodes

  const NodeState& at(const std::vector<int>& idx) const;
  int flat(const std::vector<int>& idx) const;
};

/// Integration state carrying the diagonal Taylor jets (the Goursat data
/// transported off the axes). Exposed for tests.
struct FlowState {
  Complex tau;
  std::vector<Series> xi;  // jet of xi_k along lambda_k, length P+1
  std::vector<Series> v;
  std::vector<Series> r;   // jets of R_i along lambda_i (optional)
  std::vector<Complex> coeff;
  std::vector<Complex> usamp;
  std::vector<double> lambda;

  NodeState snapshot(const Scenario& sc) const;
};

FlowState initial_state(const Scenario& sc);

/// One RK4 leg along an axis; state advances in place.
void rk4_leg(FlowState& s, int axis, double dist, const Scenario& sc);

/// Staircase to a target lambda (axes in increasing order).
FlowState evaluate_flow(const Scenario& sc, const std::vector<double>& lam);
NodeState evaluate_at(const Scenario& sc, const std::vector<double>& lam);

/// Axis-aligned path given as (axis, target) segments; returns the states
/// at every grid-aligned node crossed plus the final state.
struct PathResult {
  std::vector<NodeState> nodes;
  NodeState final_state;
};
PathResult integrate_staircase(const Scenario& sc,
                               const std::vector<std::pair<int, double>>& path);

/// Fill the full rectangular grid by recursive staircases.
HydroField integrate_grid(const Scenario& sc);

// ---- point-level operations (the basic flow, no jet transport) ----

struct GTDerivative {
  Complex dtau;
  std::vector<Complex> dxi;
  std::vector<Complex> dv;
};

/// d/dlambda_axis of (tau, xi, v): off-diagonal per the compatibility
/// system, diagonal from the driving spec.
GTDerivative gt_direction_derivative(const GTState& s, int axis,
                                     const std::vector<Driving>& d,
                                     const std::vector<Driving>& w);

/// du/dlambda_j at a point (half-modulus form).
Complex loewner_rhs_pointwise(Complex u, const GTState& s, int j);

/// dc_m/dlambda_j for m = 1..M.
std::vector<Complex> loewner_rhs_series(const std::vector<Complex>& coeffs,
                                        const GTState& s, int j, int M);

/// Cross-derivative data entering the compatibility function.
struct CrossData {
  Complex dxi_k_dl_j;  // dxi_k/dlambda_j
  Complex dxi_j_dl_k;  // dxi_j/dlambda_k
  Complex d2tau;       // d^2 tau / dlambda_j dlambda_k
};

/// The Loewner compatibility function F_jk(u); vanishes when the cross
/// data satisfies the compatibility system.
Complex f_jk_evaluate(const GTState& s, const CrossData& cross, Complex u,
                      int j, int k);

// ---- verification checks ----

/// Grid-FD cross-derivatives of xi, v and mixed tau vs the closed forms.
std::vector<ResidualReport> check_gt_fd(const HydroField& field,
                                        double tol = 1e-5);

/// |F_jk(u)| with analytically substituted compatibility data at random u.
ResidualReport check_fjk(const GTState& s, int samples, std::uint64_t seed,
                         double tol = 1e-9);

/// Two staircase orders to the far corner: agreement of (tau, xi,
/// u-samples).
ResidualReport check_path_independence(const Scenario& sc, double tol = 1e-7);

/// FD of S(u(z1)) - S(u(z2)) along the grid vs the closed product form,
/// plus the z2 -> infinity variant.
ResidualReport check_f201(const HydroField& field, int s1, int s2,
                          double tol = 1e-5);

/// Reality/imaginarity drift and u-series diagnostics of a field.
std::vector<ResidualReport> check_field_health(const HydroField& field,
                                               double reality_tol = 1e-10,
                                               double series_tol = 1e-3);

}  // namespace edkp

#endif  // EDKP_GT_HPP
