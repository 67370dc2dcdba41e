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

#include "edkp/sampling.hpp"

#include <cmath>

namespace edkp {

double Rng::uniform() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return double(z >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

bool admissible(std::initializer_list<Complex> args, Complex tau) {
  const double p = tau.imag() / 4.0;
  for (Complex x : args) {
    const double re = std::remainder(x.real(), 0.5);
    const double im = std::remainder(x.imag(), p);
    if (std::hypot(re, im) < kSampleExclusion) return false;
  }
  return true;
}

Complex draw_admissible(Rng& rng, Complex tau) {
  for (int tries = 0; tries < 10000; ++tries) {
    Complex x{rng.uniform(0.0, 1.0), rng.uniform(0.0, tau.imag() / 2.0)};
    if (admissible({x}, tau)) return x;
  }
  throw Error("admissible sampling failed (exclusion region too large)");
}

}  // namespace edkp
