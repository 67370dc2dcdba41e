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

#ifndef EDKP_ERRORS_HPP
#define EDKP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace edkp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidModularParam : Error {
  using Error::Error;
};

struct UnsupportedOrder : Error {
  using Error::Error;
};

// Argument within the hard exclusion radius of a pole of the requested
// function (zero of the theta in a denominator).
struct PoleProximity : Error {
  using Error::Error;
};

// Log-branch tracking lost: consecutive path samples step too far.
struct BranchJump : Error {
  using Error::Error;
};

// Driving points collided (mod lattice); the Gibbons-Tsarev right-hand
// sides have poles there and integration cannot continue.
struct CollisionError : Error {
  using Error::Error;
};

struct DegenerateDenominator : Error {
  using Error::Error;
};

struct NotEnoughAxes : Error {
  using Error::Error;
};

struct OrderExceeded : Error {
  using Error::Error;
};

struct SingularJacobian : Error {
  using Error::Error;
};

struct NoConvergence : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace edkp

#endif  // EDKP_ERRORS_HPP
