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

#ifndef EDKP_METRIC_HPP
#define EDKP_METRIC_HPP

#include "edkp/gt.hpp"

namespace edkp {

/// Generating ratio Q(u, xi) = S'(u + xi)/S'(xi).
Complex q_generating(Complex u, double xi, const ModularParam& m);

/// Characteristic speeds phi_{j,k} = Phi_k'(xi_j)/S'(xi_j), k = 0..K,
/// built by composing the Taylor expansion of S' with the u-series.
struct FaberTable {
  int order = 0;
  std::vector<std::vector<Complex>> speeds;  // [j][k], k = 0..K
};

FaberTable faber_speeds(const ULaurent& u, const GTState& s, int K);

/// Closed-form Christoffel symbol Gamma_ij (i != j).
Complex gamma_closed(const GTState& s, int i, int j);

/// Gamma_ij from the generating-function ratio at one z-sample, with the
/// numerator's lambda-derivative taken analytically through the flow
/// equations. Must be z-independent and equal gamma_closed.
Complex gamma_from_ratio(const GTState& s, const ULaurent& u, int i, int j,
                         int sample_index);

/// Diagonal metric coefficient g_i.
Complex metric_g(const GTState& s, int i);

/// Egorov potential G = log R with R = pi c_1 theta_2(0) theta_3(0).
double potential_from_c1(const ULaurent& u, const GTState& s);

/// Gamma_ij = (1/2) d/dlambda_j log g_i by grid FD vs the closed form.
ResidualReport check_gamma_log(const HydroField& field, double tol = 1e-5);

/// Egorov symmetry dg_i/dlambda_k = dg_k/dlambda_i by grid FD.
ResidualReport check_egorov(const HydroField& field, double tol = 1e-5);

/// g_i = d/dlambda_i log R by grid FD.
ResidualReport check_potential(const HydroField& field, double tol = 1e-5);

/// Curvature-type relation dGamma_ij/dlambda_k = GG + GG - GG (needs
/// N >= 3; throws NotEnoughAxes otherwise) plus the h-function == 0 at the
/// field's xi-triples, and the Tsarev symmetry in (j, k).
std::vector<ResidualReport> check_curvature(const HydroField& field,
                                            double fd_tol = 1e-5,
                                            double h_tol = 1e-9);

/// z-independence of the ratio route and its match to the closed form.
std::vector<ResidualReport> check_gamma_routes(const HydroField& field,
                                               double spread_tol = 1e-9,
                                               double match_tol = 1e-8);

}  // namespace edkp

#endif  // EDKP_METRIC_HPP
