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

#ifndef EDKP_SAMPLING_HPP
#define EDKP_SAMPLING_HPP

#include <cstdint>

#include "edkp/theta.hpp"

namespace edkp {

/// Deterministic uniform sampler (xoshiro-free: plain splitmix64 stream so
/// reports are byte-stable across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  double uniform();  // in [0, 1)
  double uniform(double lo, double hi);

 private:
  std::uint64_t state_;
};

/// Exclusion radius used when drawing identity-suite samples.
inline constexpr double kSampleExclusion = 0.05;

/// True when every listed argument keeps distance >= kSampleExclusion from
/// the half-lattice grid (Z/2 + (tau/4) Z), a superset of all poles of the
/// functions entering the identity catalogue at moduli tau and tau/2.
bool admissible(std::initializer_list<Complex> args, Complex tau);

/// Draw a point in the rectangle (0,1) x (0, Im tau/2) such that all of
/// arg_shifts(x) are admissible. Throws after too many rejections.
Complex draw_admissible(Rng& rng, Complex tau);

}  // namespace edkp

#endif  // EDKP_SAMPLING_HPP
