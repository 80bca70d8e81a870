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

#include "geofed/mechanism.h"

#include <cmath>
#include <string>
#include <vector>

#include "geofed/status.h"

namespace geofed {
namespace {

void ValidateCalibration(const CalibrationInput& c) {
  if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  }
  if (!(c.delta > 0.0 && c.delta < 1.0)) {
    throw Error(ErrorCode::kInvalidDelta, "delta must lie in (0, 1)");
  }
  if (!(c.tau > 0.0) || !std::isfinite(c.tau)) {
    throw Error(ErrorCode::kInvalidArgument,
                "calibration needs a finite positive tau");
  }
  if (c.n_samples < 1 || c.steps < 1 || c.inner_steps < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "sample count, K and m must be at least 1");
  }
  if (!(c.scale_const > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "scale constant must be positive");
  }
}

}  // namespace

NoiseScale::NoiseScale(double sigma) : sigma_(sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidArgument,
                "noise scale must be finite and >= 0, got " +
                    std::to_string(sigma));
  }
}

ClipThreshold::ClipThreshold(double tau) : tau_(tau) {
  if (!(tau > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "clip threshold must be > 0");
  }
}

TangentVector Clip(const TangentVector& v, ClipThreshold tau) {
  const double norm = Norm(v);
  if (norm <= tau.tau()) return v;
  return v * (tau.tau() / norm);
}

TangentVector SampleTangentGaussian(const ManifoldPoint& x, NoiseScale sigma,
                                    RngStream& rng) {
  if (sigma.sigma() == 0.0) return TangentVector::Zero(x);
  std::vector<double> coeffs(x.manifold().Dimension());
  for (double& c : coeffs) c = sigma.sigma() * rng.NextNormal();
  return CombineFrame(x, coeffs);
}

NoiseScale CalibrateSigmaRsgd(const CalibrationInput& c) {
  ValidateCalibration(c);
  const double n = c.n_samples;
  return NoiseScale(std::sqrt(c.scale_const * c.steps * std::log(1.0 / c.delta) *
                              c.tau * c.tau / (n * n * c.epsilon * c.epsilon)));
}

NoiseScale CalibrateSigmaRsvrg(const CalibrationInput& c) {
  ValidateCalibration(c);
  const double n = c.n_samples;
  return NoiseScale(std::sqrt(c.scale_const * c.inner_steps * c.steps *
                              std::log(1.0 / c.delta) * c.tau * c.tau /
                              (n * n * c.epsilon * c.epsilon)));
}

NoiseScale GaussianMechanismSigma(double sensitivity, double epsilon,
                                  double delta) {
  if (!(sensitivity >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sensitivity must be >= 0");
  }
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidDelta, "delta must lie in (0, 1)");
  }
  return NoiseScale(std::sqrt(2.0 * std::log(1.25 / delta)) * sensitivity /
                    epsilon);
}

}  // namespace geofed
