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

#include "edkp/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace edkp {

void ResidualAccumulator::add(double abs_residual, double scale) {
  const double r = abs_residual / std::max(1.0, scale);
  max_ = std::max(max_, r);
  sumsq_ += r * r;
  ++n_;
}

ResidualReport ResidualAccumulator::finish(const std::string& name,
                                           double tau_im,
                                           double tolerance) const {
  ResidualReport rep;
  rep.identity_name = name;
  rep.tau_im = tau_im;
  rep.samples = n_;
  rep.max_residual = max_;
  rep.rms_residual = n_ > 0 ? std::sqrt(sumsq_ / n_) : 0.0;
  rep.tolerance = tolerance;
  rep.pass = max_ < tolerance;
  return rep;
}

std::string reports_to_json(const std::vector<ResidualReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    arr.push_back({{"identity_name", r.identity_name},
                   {"tau", r.tau_im},
                   {"samples", r.samples},
                   {"max_residual", r.max_residual},
                   {"rms_residual", r.rms_residual},
                   {"tolerance", r.tolerance},
                   {"pass", r.pass}});
  }
  return arr.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<ResidualReport>& reports) {
  std::ostringstream os;
  os << "identity_name,tau,samples,max_residual,rms_residual,tolerance,pass\n";
  os.precision(17);
  for (const auto& r : reports) {
    os << r.identity_name << ',' << r.tau_im << ',' << r.samples << ','
       << r.max_residual << ',' << r.rms_residual << ',' << r.tolerance << ','
       << (r.pass ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace edkp
