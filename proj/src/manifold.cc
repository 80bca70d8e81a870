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

#include "geofed/manifold.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "geofed/spd_math.h"
#include "geofed/status.h"

namespace geofed {
namespace internal {

struct SpdFactors {
  Eigen::MatrixXd sqrt;
  Eigen::MatrixXd inv_sqrt;
};

}  // namespace internal

namespace {

constexpr double kSmallNorm = 1e-8;
constexpr double kSphereTol = 1e-12;
constexpr double kHyperboloidTol = 1e-10;
constexpr double kSymmetryTol = 1e-12;
constexpr double kTangentTol = 1e-10;
constexpr double kBaseTol = 1e-12;

double Scale(const Eigen::MatrixXd& m) {
  return std::max(1.0, m.cwiseAbs().maxCoeff());
}

bool IsSymmetric(const Eigen::MatrixXd& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTol * Scale(m);
}

void CheckShape(const Manifold& manifold, const Eigen::MatrixXd& coords,
                const char* what) {
  if (coords.rows() != manifold.AmbientRows() ||
      coords.cols() != manifold.AmbientCols()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " shape " + std::to_string(coords.rows()) +
                    "x" + std::to_string(coords.cols()) + " does not match " +
                    manifold.Name());
  }
}

void RequireSameBase(const ManifoldPoint& x, const ManifoldPoint& y,
                     const char* op) {
  if (!SameBase(x, y)) {
    throw Error(ErrorCode::kBaseMismatch,
                std::string(op) + ": tangent vector is based elsewhere");
  }
}

// sin(t)/t and (cosh/sinh analogues) with a series near zero.
double SinOverT(double t) {
  return t < kSmallNorm ? 1.0 - t * t / 6.0 : std::sin(t) / t;
}
double SinhOverT(double t) {
  return t < kSmallNorm ? 1.0 + t * t / 6.0 : std::sinh(t) / t;
}
double CosT(double t) { return t < kSmallNorm ? 1.0 - t * t / 2.0 : std::cos(t); }
double CoshT(double t) {
  return t < kSmallNorm ? 1.0 + t * t / 2.0 : std::cosh(t);
}

// Householder reflection H = I - 2 w w^T / w^T w with H e_1 = target, for a
// unit vector target. Applies H to v.
Eigen::VectorXd ReflectToward(const Eigen::VectorXd& target,
                              const Eigen::VectorXd& v) {
  Eigen::VectorXd w = -target;
  w(0) += 1.0;
  const double ww = w.squaredNorm();
  if (ww == 0.0) return v;
  return v - (2.0 * w.dot(v) / ww) * w;
}

// Geodesic angle and the unnormalized log direction on the sphere.
struct SphereLogParts {
  double angle;
  Eigen::VectorXd direction;  // y - (x^T y) x
  double direction_norm;
};

SphereLogParts SphereParts(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const double c = x.dot(y);
  Eigen::VectorXd w = y - c * x;
  const double s = w.norm();
  return {std::atan2(s, c), std::move(w), s};
}

// Lorentz inner product of two vectors tangent at x, using only their space
// components: u_0 = <u_s, x_s> / x_0 by tangency, so
//   <u, v>_L = <u_perp, v_perp> + <u, e><v, e> / x_0^2,  e = x_s / |x_s|.
// Unlike the raw form this has no cancellation far from the origin, where
// the coordinates grow like cosh of the distance.
double HyperTangentInner(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& v) {
  const Eigen::Index d = x.size() - 1;
  const double r = x.tail(d).norm();
  if (r == 0.0) return u.tail(d).dot(v.tail(d));
  const Eigen::VectorXd e = x.tail(d) / r;
  const double ue = u.tail(d).dot(e);
  const double ve = v.tail(d).dot(e);
  const Eigen::VectorXd up = u.tail(d) - ue * e;
  const Eigen::VectorXd vp = v.tail(d) - ve * e;
  return up.dot(vp) + ue * ve / (x(0) * x(0));
}

// Sets the time coordinate of a vector tangent at x from its space part,
// <v, x>_L = 0  <=>  v_0 = <v_s, x_s> / x_0.
void LiftTangentTime(const Eigen::VectorXd& x, Eigen::VectorXd& v) {
  const Eigen::Index d = x.size() - 1;
  v(0) = v.tail(d).dot(x.tail(d)) / x(0);
}

// cosh(dist(x, y)) - 1 = |x - y|_L^2 / 2, from space coordinates only.
// With D = x_s - y_s, S = x_0 + y_0, m = (x_s + y_s) / S, the time difference
// is <D, m>, and 1 - |m|^2 = 2 (2 + c) / S^2. Splitting D along m then gives
//   c = (A + 4q) / (2 - 2q),  A = |D_perp|^2,  q = <D, m/|m|>^2 / S^2,
// which stays accurate where the coordinates are huge and the points close.
double HyperCoshMinusOne(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::Index d = x.size() - 1;
  const Eigen::VectorXd diff = x.tail(d) - y.tail(d);
  const double total = x(0) + y(0);
  const Eigen::VectorXd mid = x.tail(d) + y.tail(d);
  const double mid_norm = mid.norm();
  double along = 0.0;
  double perp_sq = diff.squaredNorm();
  if (mid_norm > 0.0) {
    const Eigen::VectorXd e = mid / mid_norm;
    along = diff.dot(e);
    perp_sq = (diff - along * e).squaredNorm();
  }
  const double q = (along / total) * (along / total);
  const double c = std::max(0.0, (perp_sq + 4.0 * q) / (2.0 - 2.0 * q));
  // 2 - 2q cancels once the points are far apart: the error above grows like
  // eps c^2, while -<x, y>_L - 1 is off by about eps x_0 y_0. Take the
  // better of the two.
  if (c > 1.0 && x(0) * y(0) < c * c) {
    return x(0) * y(0) - x.tail(d).dot(y.tail(d)) - 1.0;
  }
  return c;
}

struct HyperLogParts {
  double angle;
  Eigen::VectorXd direction;  // y - cosh(angle) x, tangent at x
  double direction_norm;      // sinh(angle)
  double cosh_minus_one;
};

HyperLogParts HyperParts(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::Index d = x.size() - 1;
  const double c = HyperCoshMinusOne(x, y);
  Eigen::VectorXd w(x.size());
  w.tail(d) = (y.tail(d) - x.tail(d)) - c * x.tail(d);
  LiftTangentTime(x, w);
  return {2.0 * std::asinh(std::sqrt(0.5 * c)), std::move(w),
          std::sqrt(c * (c + 2.0)), c};
}

}  // namespace

// ---------------------------------------------------------------- Manifold

Manifold Manifold::Sphere(int d) {
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "sphere needs d >= 1");
  return Manifold(ManifoldKind::kSphere, d);
}

Manifold Manifold::Spd(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "SPD needs n >= 1");
  return Manifold(ManifoldKind::kSpd, n);
}

Manifold Manifold::Hyperboloid(int d) {
  if (d < 1) {
    throw Error(ErrorCode::kInvalidArgument, "hyperboloid needs d >= 1");
  }
  return Manifold(ManifoldKind::kHyperboloid, d);
}

int Manifold::Dimension() const {
  return kind_ == ManifoldKind::kSpd ? param_ * (param_ + 1) / 2 : param_;
}

int Manifold::AmbientRows() const {
  return kind_ == ManifoldKind::kSpd ? param_ : param_ + 1;
}

int Manifold::AmbientCols() const {
  return kind_ == ManifoldKind::kSpd ? param_ : 1;
}

std::string Manifold::Name() const {
  switch (kind_) {
    case ManifoldKind::kSphere:
      return "Sphere(" + std::to_string(param_) + ")";
    case ManifoldKind::kSpd:
      return "SPD(" + std::to_string(param_) + ")";
    case ManifoldKind::kHyperboloid:
      return "Hyperboloid(" + std::to_string(param_) + ")";
  }
  return "?";
}

// ----------------------------------------------------------- ManifoldPoint

ManifoldPoint::ManifoldPoint(Manifold manifold, Eigen::MatrixXd coords)
    : manifold_(manifold), coords_(std::move(coords)) {}

ManifoldPoint ManifoldPoint::Create(const Manifold& manifold,
                                    Eigen::MatrixXd coords) {
  CheckShape(manifold, coords, "point");
  if (!coords.allFinite()) {
    throw Error(ErrorCode::kInvalidPoint, "non-finite coordinates");
  }
  ManifoldPoint point(manifold, std::move(coords));
  const Eigen::MatrixXd& c = point.coords_;
  switch (manifold.kind()) {
    case ManifoldKind::kSphere: {
      const double norm = c.norm();
      if (std::abs(norm - 1.0) > kSphereTol) {
        throw Error(ErrorCode::kInvalidPoint,
                    "sphere point has norm " + std::to_string(norm));
      }
      break;
    }
    case ManifoldKind::kSpd: {
      if (!IsSymmetric(c)) {
        throw Error(ErrorCode::kInvalidPoint, "SPD point is not symmetric");
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
      const Eigen::VectorXd& lambda = es.eigenvalues();
      if (!(lambda.minCoeff() > 0.0)) {
        throw Error(ErrorCode::kInvalidPoint,
                    "SPD point has eigenvalue " +
                        std::to_string(lambda.minCoeff()));
      }
      auto factors = std::make_shared<internal::SpdFactors>();
      const Eigen::MatrixXd& q = es.eigenvectors();
      factors->sqrt = Symmetrize(q * lambda.cwiseSqrt().asDiagonal() *
                                 q.transpose());
      factors->inv_sqrt = Symmetrize(
          q * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * q.transpose());
      point.spd_ = std::move(factors);
      break;
    }
    case ManifoldKind::kHyperboloid: {
      const Eigen::VectorXd v = c.col(0);
      const double form = LorentzInner(v, v);
      if (std::abs(form + 1.0) > kHyperboloidTol * std::max(1.0, v(0) * v(0)) ||
          !(v(0) > 0.0)) {
        throw Error(ErrorCode::kInvalidPoint,
                    "hyperboloid point has <x,x>_L = " + std::to_string(form) +
                        ", x_1 = " + std::to_string(v(0)));
      }
      break;
    }
  }
  return point;
}

ManifoldPoint ManifoldPoint::Normalized(const Manifold& manifold,
                                        Eigen::MatrixXd coords) {
  CheckShape(manifold, coords, "point");
  switch (manifold.kind()) {
    case ManifoldKind::kSphere:
      coords /= coords.norm();
      break;
    case ManifoldKind::kSpd:
      coords = Symmetrize(coords);
      break;
    case ManifoldKind::kHyperboloid:
      coords(0, 0) = std::sqrt(1.0 + coords.bottomRows(coords.rows() - 1)
                                         .squaredNorm());
      break;
  }
  return Create(manifold, std::move(coords));
}

std::vector<double> ManifoldPoint::Flatten() const {
  std::vector<double> out;
  out.reserve(coords_.size());
  for (Eigen::Index r = 0; r < coords_.rows(); ++r) {
    for (Eigen::Index c = 0; c < coords_.cols(); ++c) {
      out.push_back(coords_(r, c));
    }
  }
  return out;
}

const Eigen::MatrixXd& ManifoldPoint::SpdSqrt() const {
  if (!spd_) throw Error(ErrorCode::kInvalidArgument, "not an SPD point");
  return spd_->sqrt;
}

const Eigen::MatrixXd& ManifoldPoint::SpdInvSqrt() const {
  if (!spd_) throw Error(ErrorCode::kInvalidArgument, "not an SPD point");
  return spd_->inv_sqrt;
}

// ----------------------------------------------------------- TangentVector

TangentVector MakeTangentUnchecked(const ManifoldPoint& base,
                                   Eigen::MatrixXd coords) {
  return TangentVector(base, std::move(coords));
}

TangentVector TangentVector::Create(const ManifoldPoint& base,
                                    Eigen::MatrixXd coords) {
  CheckShape(base.manifold(), coords, "tangent vector");
  const double scale = Scale(coords);
  double residual = 0.0;
  switch (base.manifold().kind()) {
    case ManifoldKind::kSphere:
      residual = std::abs(base.coords().col(0).dot(coords.col(0)));
      break;
    case ManifoldKind::kSpd:
      if (!IsSymmetric(coords)) {
        throw Error(ErrorCode::kInvalidPoint, "SPD tangent is not symmetric");
      }
      break;
    case ManifoldKind::kHyperboloid:
      residual = std::abs(LorentzInner(base.coords().col(0), coords.col(0)));
      break;
  }
  if (residual > kTangentTol * scale * Scale(base.coords())) {
    throw Error(ErrorCode::kInvalidPoint,
                "vector is not tangent (residual " + std::to_string(residual) +
                    ")");
  }
  return TangentVector(base, std::move(coords));
}

TangentVector TangentVector::Zero(const ManifoldPoint& base) {
  return TangentVector(base, Eigen::MatrixXd::Zero(base.coords().rows(),
                                                   base.coords().cols()));
}

TangentVector TangentVector::operator*(double scale) const {
  return TangentVector(base_, coords_ * scale);
}

TangentVector TangentVector::operator+(const TangentVector& other) const {
  RequireSameBase(base_, other.base_, "operator+");
  return TangentVector(base_, coords_ + other.coords_);
}

TangentVector TangentVector::operator-(const TangentVector& other) const {
  RequireSameBase(base_, other.base_, "operator-");
  return TangentVector(base_, coords_ - other.coords_);
}

// ---------------------------------------------------------------- geometry

bool SameBase(const ManifoldPoint& x, const ManifoldPoint& y) {
  if (!(x.manifold() == y.manifold())) return false;
  if (&x.coords() == &y.coords()) return true;
  return (x.coords() - y.coords()).cwiseAbs().maxCoeff() <=
         kBaseTol * Scale(x.coords());
}

double LorentzInner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return x.dot(y) - 2.0 * x(0) * y(0);
}

double Inner(const TangentVector& u, const TangentVector& v) {
  RequireSameBase(u.base(), v.base(), "Inner");
  switch (u.base().manifold().kind()) {
    case ManifoldKind::kSphere:
      return u.coords().col(0).dot(v.coords().col(0));
    case ManifoldKind::kSpd: {
      // Whitening both arguments first makes the value exactly symmetric.
      const Eigen::MatrixXd& s = u.base().SpdInvSqrt();
      const Eigen::MatrixXd a = s * u.coords() * s;
      const Eigen::MatrixXd b = s * v.coords() * s;
      return a.cwiseProduct(b).sum();
    }
    case ManifoldKind::kHyperboloid:
      return HyperTangentInner(u.base().coords().col(0), u.coords().col(0),
                               v.coords().col(0));
  }
  return 0.0;
}

double Norm(const TangentVector& v) { return std::sqrt(std::max(0.0, Inner(v, v))); }

ManifoldPoint Exp(const ManifoldPoint& x, const TangentVector& v) {
  RequireSameBase(x, v.base(), "Exp");
  const Manifold& m = x.manifold();
  switch (m.kind()) {
    case ManifoldKind::kSphere: {
      const double t = v.coords().norm();
      Eigen::MatrixXd y = CosT(t) * x.coords() + SinOverT(t) * v.coords();
      return ManifoldPoint::Normalized(m, std::move(y));
    }
    case ManifoldKind::kSpd: {
      const Eigen::MatrixXd& s = x.SpdSqrt();
      const Eigen::MatrixXd& si = x.SpdInvSqrt();
      Eigen::MatrixXd y = s * SymmetricExp(si * v.coords() * si) * s;
      return ManifoldPoint::Normalized(m, std::move(y));
    }
    case ManifoldKind::kHyperboloid: {
      const double t = Norm(v);
      Eigen::MatrixXd y = CoshT(t) * x.coords() + SinhOverT(t) * v.coords();
      return ManifoldPoint::Normalized(m, std::move(y));
    }
  }
  throw Error(ErrorCode::kInternal, "unknown manifold");
}

TangentVector Log(const ManifoldPoint& x, const ManifoldPoint& y) {
  if (!(x.manifold() == y.manifold())) {
    throw Error(ErrorCode::kInvalidArgument, "Log across manifolds");
  }
  switch (x.manifold().kind()) {
    case ManifoldKind::kSphere: {
      const Eigen::VectorXd xv = x.coords().col(0);
      auto parts = SphereParts(xv, y.coords().col(0));
      if (parts.angle >= std::numbers::pi - kAntipodalMargin) {
        throw Error(ErrorCode::kOutsideInjectivityRadius,
                    "sphere points are (nearly) antipodal");
      }
      if (parts.direction_norm == 0.0) return TangentVector::Zero(x);
      Eigen::VectorXd v = (parts.angle / parts.direction_norm) * parts.direction;
      v -= xv.dot(v) * xv;
      return MakeTangentUnchecked(x, std::move(v));
    }
    case ManifoldKind::kSpd: {
      const Eigen::MatrixXd& s = x.SpdSqrt();
      const Eigen::MatrixXd& si = x.SpdInvSqrt();
      return MakeTangentUnchecked(
          x, Symmetrize(s * SymmetricLog(si * y.coords() * si) * s));
    }
    case ManifoldKind::kHyperboloid: {
      auto parts = HyperParts(x.coords().col(0), y.coords().col(0));
      if (parts.direction_norm == 0.0) return TangentVector::Zero(x);
      return MakeTangentUnchecked(
          x, (parts.angle / parts.direction_norm) * parts.direction);
    }
  }
  throw Error(ErrorCode::kInternal, "unknown manifold");
}

double Dist(const ManifoldPoint& x, const ManifoldPoint& y) {
  if (!(x.manifold() == y.manifold())) {
    throw Error(ErrorCode::kInvalidArgument, "Dist across manifolds");
  }
  switch (x.manifold().kind()) {
    case ManifoldKind::kSphere:
      return SphereParts(x.coords().col(0), y.coords().col(0)).angle;
    case ManifoldKind::kSpd: {
      const Eigen::MatrixXd& si = x.SpdInvSqrt();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
          Symmetrize(si * y.coords() * si), Eigen::EigenvaluesOnly);
      double sum = 0.0;
      for (double lambda : es.eigenvalues()) {
        const double l = std::log(std::max(lambda, kEigenFloor));
        sum += l * l;
      }
      return std::sqrt(sum);
    }
    case ManifoldKind::kHyperboloid:
      return HyperParts(x.coords().col(0), y.coords().col(0)).angle;
  }
  throw Error(ErrorCode::kInternal, "unknown manifold");
}

TangentVector Transport(const ManifoldPoint& x, const ManifoldPoint& y,
                        const TangentVector& v) {
  RequireSameBase(x, v.base(), "Transport");
  switch (x.manifold().kind()) {
    case ManifoldKind::kSphere: {
      const Eigen::VectorXd xv = x.coords().col(0);
      const Eigen::VectorXd yv = y.coords().col(0);
      auto parts = SphereParts(xv, yv);
      if (parts.angle >= std::numbers::pi - kAntipodalMargin) {
        throw Error(ErrorCode::kOutsideInjectivityRadius,
                    "sphere points are (nearly) antipodal");
      }
      Eigen::VectorXd out = v.coords().col(0);
      if (parts.direction_norm > 0.0) {
        // Rotate the component along the geodesic direction u; the rest of
        // v is orthogonal to the rotation plane and stays fixed.
        const Eigen::VectorXd u = parts.direction / parts.direction_norm;
        const double along = u.dot(out);
        out += along * ((std::cos(parts.angle) - 1.0) * u -
                        std::sin(parts.angle) * xv);
      }
      out -= yv.dot(out) * yv;
      return MakeTangentUnchecked(y, std::move(out));
    }
    case ManifoldKind::kSpd: {
      const Eigen::MatrixXd& s = x.SpdSqrt();
      const Eigen::MatrixXd& si = x.SpdInvSqrt();
      // E = (Y X^-1)^{1/2} = X^{1/2} (X^{-1/2} Y X^{-1/2})^{1/2} X^{-1/2}.
      const Eigen::MatrixXd e = s * SymmetricSqrt(si * y.coords() * si) * si;
      return MakeTangentUnchecked(
          y, Symmetrize(e * v.coords() * e.transpose()));
    }
    case ManifoldKind::kHyperboloid: {
      // Gamma v = v - <u, v> / d^2 (Log_x y + Log_y x) with u = Log_x y; the
      // two logs sum to -(d / sinh d) c (x + y), c = cosh d - 1.
      const Eigen::VectorXd xv = x.coords().col(0);
      const Eigen::VectorXd yv = y.coords().col(0);
      const auto parts = HyperParts(xv, yv);
      Eigen::VectorXd out = v.coords().col(0);
      if (parts.direction_norm > 0.0) {
        const double uv = HyperTangentInner(xv, parts.direction, out) /
                          parts.direction_norm;  // <u, v> / d
        const double k = uv * parts.cosh_minus_one / parts.direction_norm;
        out += k * (xv + yv);
      }
      LiftTangentTime(yv, out);
      return MakeTangentUnchecked(y, std::move(out));
    }
  }
  throw Error(ErrorCode::kInternal, "unknown manifold");
}

TangentVector ProjectTangent(const ManifoldPoint& x, const Eigen::MatrixXd& w) {
  CheckShape(x.manifold(), w, "ambient array");
  switch (x.manifold().kind()) {
    case ManifoldKind::kSphere: {
      const Eigen::VectorXd xv = x.coords().col(0);
      return MakeTangentUnchecked(x, w - xv.dot(w.col(0)) * xv);
    }
    case ManifoldKind::kSpd:
      return MakeTangentUnchecked(x, Symmetrize(w));
    case ManifoldKind::kHyperboloid: {
      const Eigen::VectorXd xv = x.coords().col(0);
      return MakeTangentUnchecked(x, w + LorentzInner(xv, w.col(0)) * xv);
    }
  }
  throw Error(ErrorCode::kInternal, "unknown manifold");
}

TangentVector CombineFrame(const ManifoldPoint& x,
                           std::span<const double> coeffs) {
  const Manifold& m = x.manifold();
  if (static_cast<int>(coeffs.size()) != m.Dimension()) {
    throw Error(ErrorCode::kInvalidArgument,
                "frame combination needs " + std::to_string(m.Dimension()) +
                    " coefficients");
  }
  switch (m.kind()) {
    case ManifoldKind::kSphere: {
      // Frame: H e_2, ..., H e_{d+1} with H the reflection taking e_1 to x.
      Eigen::VectorXd local = Eigen::VectorXd::Zero(m.param() + 1);
      for (int k = 0; k < m.param(); ++k) local(k + 1) = coeffs[k];
      const Eigen::VectorXd xv = x.coords().col(0);
      Eigen::VectorXd out = ReflectToward(xv, local);
      out -= xv.dot(out) * xv;
      return MakeTangentUnchecked(x, std::move(out));
    }
    case ManifoldKind::kSpd: {
      // Trace-orthonormal basis at the identity, pushed through
      // U -> X^{1/2} U X^{1/2}.
      const int n = m.param();
      Eigen::MatrixXd c(n, n);
      int k = 0;
      for (int i = 0; i < n; ++i) c(i, i) = coeffs[k++];
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          c(i, j) = c(j, i) = coeffs[k++] * (1.0 / std::numbers::sqrt2);
        }
      }
      const Eigen::MatrixXd& s = x.SpdSqrt();
      return MakeTangentUnchecked(x, Symmetrize(s * c * s));
    }
    case ManifoldKind::kHyperboloid: {
      // x = (cosh r, sinh r * u). The frame is the boost direction
      // (sinh r, cosh r * u) followed by a spatial completion of u.
      const int d = m.param();
      const Eigen::VectorXd xv = x.coords().col(0);
      const Eigen::VectorXd spatial = xv.tail(d);
      const double sinh_r = spatial.norm();
      Eigen::VectorXd u = Eigen::VectorXd::Zero(d);
      if (sinh_r > 0.0) {
        u = spatial / sinh_r;
      } else {
        u(0) = 1.0;
      }
      Eigen::VectorXd local = Eigen::VectorXd::Zero(d);
      for (int k = 1; k < d; ++k) local(k) = coeffs[k];
      Eigen::VectorXd out(d + 1);
      out(0) = coeffs[0] * sinh_r;
      out.tail(d) = coeffs[0] * xv(0) * u + ReflectToward(u, local);
      LiftTangentTime(xv, out);
      return MakeTangentUnchecked(x, std::move(out));
    }
  }
  throw Error(ErrorCode::kInternal, "unknown manifold");
}

TangentFrame MakeTangentFrame(const ManifoldPoint& x) {
  const int d = x.manifold().Dimension();
  TangentFrame frame{x, {}};
  frame.basis.reserve(d);
  std::vector<double> unit(d, 0.0);
  for (int k = 0; k < d; ++k) {
    unit[k] = 1.0;
    frame.basis.push_back(CombineFrame(x, unit));
    unit[k] = 0.0;
  }
  return frame;
}

std::vector<double> FrameCoefficients(const TangentFrame& frame,
                                      const TangentVector& v) {
  std::vector<double> out;
  out.reserve(frame.basis.size());
  for (const TangentVector& b : frame.basis) out.push_back(Inner(b, v));
  return out;
}

ManifoldPoint CanonicalPoint(const Manifold& manifold) {
  Eigen::MatrixXd coords;
  if (manifold.kind() == ManifoldKind::kSpd) {
    coords = Eigen::MatrixXd::Identity(manifold.param(), manifold.param());
  } else {
    coords = Eigen::MatrixXd::Zero(manifold.param() + 1, 1);
    coords(0, 0) = 1.0;
  }
  return ManifoldPoint::Create(manifold, std::move(coords));
}

}  // namespace geofed
