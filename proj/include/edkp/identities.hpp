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

#ifndef EDKP_IDENTITIES_HPP
#define EDKP_IDENTITIES_HPP

#include <cstdint>
#include <vector>

#include "edkp/report.hpp"
#include "edkp/theta.hpp"

namespace edkp {

/// Evaluates the fixed catalogue of theta/S-function identities at random
/// admissible samples and reports one normalized residual per identity.
/// Includes the derivative ladder, the half-modulus relations, the
/// quartic shuffle, the two-point factorizations and the long h- and
/// f-function cancellations.
std::vector<ResidualReport> identity_suite(const ModularParam& m,
                                           int sample_count,
                                           std::uint64_t seed = 1,
                                           double tolerance = 1e-10);

/// The three-variable cancellation entering the curvature relation; all
/// zeta/wp factors at modulus tau/2, S-derivatives at modulus tau.
/// Identically zero for admissible arguments.
Complex h_function(Complex xi, Complex xj, Complex xk, const ModularParam& m);

/// The conserved-density cancellation (two xi's and a u argument);
/// identically zero.
Complex f_function(Complex xi, Complex xj, Complex u, const ModularParam& m);

}  // namespace edkp

#endif  // EDKP_IDENTITIES_HPP
