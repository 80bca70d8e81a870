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

// Closed-form Riemannian geometry for three manifolds:
//
//   Sphere(d)       S^d in R^{d+1}, Euclidean induced metric.
//   SPD(n)          n x n symmetric positive-definite matrices with the
//                   affine-invariant metric <U,V>_X = tr(U X^-1 V X^-1).
//   Hyperboloid(d)  Lorentz model H^d in R^{d+1}, <x,y>_L = x^T y - 2 x_1 y_1,
//                   upper sheet x_1 > 0.
//
// Points and tangent vectors are immutable values. Every operation is a pure
// function and may be called concurrently.

#ifndef GEOFED_MANIFOLD_H_
#define GEOFED_MANIFOLD_H_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace geofed {

enum class ManifoldKind { kSphere, kSpd, kHyperboloid };

class Manifold {
 public:
  static Manifold Sphere(int d);
  static Manifold Spd(int n);
  static Manifold Hyperboloid(int d);

  ManifoldKind kind() const { return kind_; }
  // d for Sphere/Hyperboloid, n for SPD.
  int param() const { return param_; }
  // Intrinsic dimension: d, n(n+1)/2, d.
  int Dimension() const;
  int AmbientRows() const;
  int AmbientCols() const;
  std::string Name() const;

  bool operator==(const Manifold& other) const = default;

 private:
  Manifold(ManifoldKind kind, int param) : kind_(kind), param_(param) {}

  ManifoldKind kind_;
  int param_;
};

namespace internal {
struct SpdFactors;
}  // namespace internal

class ManifoldPoint {
 public:
  // Validates the point invariants (unit norm, SPD, upper hyperboloid sheet)
  // and throws Error(kInvalidPoint) on violation.
  static ManifoldPoint Create(const Manifold& manifold, Eigen::MatrixXd coords);
  // Projects an approximately valid point onto the manifold (normalize,
  // symmetrize, or lift the time coordinate) before validating.
  static ManifoldPoint Normalized(const Manifold& manifold,
                                  Eigen::MatrixXd coords);

  const Manifold& manifold() const { return manifold_; }
  const Eigen::MatrixXd& coords() const { return coords_; }
  // Flat row-major copy of the coordinates.
  std::vector<double> Flatten() const;

  // SPD only: cached X^{1/2}, X^{-1/2}.
  const Eigen::MatrixXd& SpdSqrt() const;
  const Eigen::MatrixXd& SpdInvSqrt() const;

 private:
  ManifoldPoint(Manifold manifold, Eigen::MatrixXd coords);

  Manifold manifold_;
  Eigen::MatrixXd coords_;
  std::shared_ptr<const internal::SpdFactors> spd_;
};

class TangentVector {
 public:
  // Checks tangency to 1e-10 (scaled) and throws Error(kInvalidPoint)
  // otherwise. Use ProjectTangent to sanitize arbitrary ambient arrays.
  static TangentVector Create(const ManifoldPoint& base, Eigen::MatrixXd coords);
  static TangentVector Zero(const ManifoldPoint& base);

  const ManifoldPoint& base() const { return base_; }
  const Eigen::MatrixXd& coords() const { return coords_; }

  TangentVector operator*(double scale) const;
  TangentVector operator+(const TangentVector& other) const;
  TangentVector operator-(const TangentVector& other) const;
  TangentVector operator-() const { return *this * -1.0; }

 private:
  friend TangentVector MakeTangentUnchecked(const ManifoldPoint&,
                                            Eigen::MatrixXd);
  TangentVector(ManifoldPoint base, Eigen::MatrixXd coords)
      : base_(std::move(base)), coords_(std::move(coords)) {}

  ManifoldPoint base_;
  Eigen::MatrixXd coords_;
};

inline TangentVector operator*(double scale, const TangentVector& v) {
  return v * scale;
}

// Wraps coordinates already known to be tangent (closed-form results).
TangentVector MakeTangentUnchecked(const ManifoldPoint& base,
                                   Eigen::MatrixXd coords);

struct TangentFrame {
  ManifoldPoint base;
  std::vector<TangentVector> basis;
};

// True when the two points have the same manifold and coordinates agree to
// 1e-12 (relative to the coordinate scale).
bool SameBase(const ManifoldPoint& x, const ManifoldPoint& y);

double Inner(const TangentVector& u, const TangentVector& v);
double Norm(const TangentVector& v);

ManifoldPoint Exp(const ManifoldPoint& x, const TangentVector& v);
TangentVector Log(const ManifoldPoint& x, const ManifoldPoint& y);
double Dist(const ManifoldPoint& x, const ManifoldPoint& y);
// Parallel transport of v from T_x to T_y along the minimizing geodesic.
TangentVector Transport(const ManifoldPoint& x, const ManifoldPoint& y,
                        const TangentVector& v);
TangentVector ProjectTangent(const ManifoldPoint& x, const Eigen::MatrixXd& w);

TangentFrame MakeTangentFrame(const ManifoldPoint& x);
// sum_k coeffs[k] * b_k for the frame MakeTangentFrame(x) would return,
// without materializing the frame.
TangentVector CombineFrame(const ManifoldPoint& x,
                           std::span<const double> coeffs);
std::vector<double> FrameCoefficients(const TangentFrame& frame,
                                      const TangentVector& v);

// Lorentz bilinear form x^T y - 2 x_1 y_1 on raw coordinates.
double LorentzInner(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Canonical points: north pole e_1, identity matrix, hyperboloid origin.
ManifoldPoint CanonicalPoint(const Manifold& manifold);

// Sphere log/transport reject pairs at least this close to antipodal.
inline constexpr double kAntipodalMargin = 1e-6;

}  // namespace geofed

#endif  // GEOFED_MANIFOLD_H_
