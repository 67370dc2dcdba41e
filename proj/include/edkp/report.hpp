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

#ifndef EDKP_REPORT_HPP
#define EDKP_REPORT_HPP

#include <string>
#include <vector>

namespace edkp {

/// Outcome of one verified identity or equation over a sample set.
/// Residuals are normalized by max(1, largest participating term), so a
/// passing value means the identity holds relative to its own scale.
struct ResidualReport {
  std::string identity_name;
  double tau_im = 0.0;  // Im(tau) of the modular parameter used
  int samples = 0;
  double max_residual = 0.0;
  double rms_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Accumulates |lhs - rhs| / max(1, scale) over samples.
class ResidualAccumulator {
 public:
  void add(double abs_residual, double scale = 1.0);
  ResidualReport finish(const std::string& name, double tau_im,
                        double tolerance) const;

 private:
  double max_ = 0.0;
  double sumsq_ = 0.0;
  int n_ = 0;
};

std::string reports_to_json(const std::vector<ResidualReport>& reports);
std::string reports_to_csv(const std::vector<ResidualReport>& reports);

}  // namespace edkp

#endif  // EDKP_REPORT_HPP
