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

// Differential-privacy primitives on tangent spaces.

#ifndef GEOFED_MECHANISM_H_
#define GEOFED_MECHANISM_H_

#include <limits>

#include "geofed/manifold.h"
#include "geofed/rng.h"

namespace geofed {

// Standard deviation per metric-orthonormal coordinate.
class NoiseScale {
 public:
  explicit NoiseScale(double sigma);
  double sigma() const { return sigma_; }

 private:
  double sigma_;
};

// Clipping threshold. An infinite threshold disables clipping.
class ClipThreshold {
 public:
  explicit ClipThreshold(double tau);
  static ClipThreshold Disabled() {
    return ClipThreshold(std::numeric_limits<double>::infinity());
  }
  double tau() const { return tau_; }

 private:
  double tau_;
};

struct CalibrationInput {
  double epsilon = 1.0;
  double delta = 0.5;
  double tau = 1.0;
  int n_samples = 1;
  int steps = 1;        // K
  int inner_steps = 1;  // m, variance-reduced trainer only
  // o_i / õ_i. The experiments use 1.
  double scale_const = 1.0;
};

// min(tau / |v|_x, 1) * v.
TangentVector Clip(const TangentVector& v, ClipThreshold tau);

// Isotropic Gaussian on T_x M: d i.i.d. N(0, sigma^2) coefficients contracted
// against MakeTangentFrame(x). sigma == 0 returns the zero vector without
// drawing.
TangentVector SampleTangentGaussian(const ManifoldPoint& x, NoiseScale sigma,
                                    RngStream& rng);

// sigma^2 = o K log(1/delta) tau^2 / (N_i^2 eps^2).
NoiseScale CalibrateSigmaRsgd(const CalibrationInput& c);
// sigma^2 = õ m K log(1/delta) tau^2 / (N_i^2 eps^2).
NoiseScale CalibrateSigmaRsvrg(const CalibrationInput& c);

// Smallest sigma with sigma^2 >= 2 log(1.25/delta) sensitivity^2 / eps^2.
NoiseScale GaussianMechanismSigma(double sensitivity, double epsilon,
                                  double delta);

}  // namespace geofed

#endif  // GEOFED_MECHANISM_H_
