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

// Symmetric matrix functions via eigendecomposition. Results are
// re-symmetrized; logarithm and square root floor eigenvalues at kEigenFloor.

#ifndef GEOFED_SPD_MATH_H_
#define GEOFED_SPD_MATH_H_

#include <Eigen/Dense>

namespace geofed {

inline constexpr double kEigenFloor = 1e-14;

inline Eigen::MatrixXd Symmetrize(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

template <typename Fn>
Eigen::MatrixXd ApplySymmetric(const Eigen::MatrixXd& m, Fn fn) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Symmetrize(m));
  const Eigen::VectorXd mapped = es.eigenvalues().unaryExpr(fn);
  return Symmetrize(es.eigenvectors() * mapped.asDiagonal() *
                    es.eigenvectors().transpose());
}

Eigen::MatrixXd SymmetricExp(const Eigen::MatrixXd& m);
Eigen::MatrixXd SymmetricLog(const Eigen::MatrixXd& m);
Eigen::MatrixXd SymmetricSqrt(const Eigen::MatrixXd& m);

}  // namespace geofed

#endif  // GEOFED_SPD_MATH_H_
