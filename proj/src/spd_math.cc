// Copyright 2026 The GeoFed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "geofed/spd_math.h"

#include <algorithm>
#include <cmath>

namespace geofed {

Eigen::MatrixXd SymmetricExp(const Eigen::MatrixXd& m) {
  return ApplySymmetric(m, [](double l) { return std::exp(l); });
}

Eigen::MatrixXd SymmetricLog(const Eigen::MatrixXd& m) {
  return ApplySymmetric(m,
                        [](double l) { return std::log(std::max(l, kEigenFloor)); });
}

Eigen::MatrixXd SymmetricSqrt(const Eigen::MatrixXd& m) {
  return ApplySymmetric(m,
                        [](double l) { return std::sqrt(std::max(l, kEigenFloor)); });
}

}  // namespace geofed
