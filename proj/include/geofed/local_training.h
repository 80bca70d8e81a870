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

// Private local trainers run by a sampled agent between aggregations:
// clipped, noised Riemannian SGD and its variance-reduced variant.

#ifndef GEOFED_LOCAL_TRAINING_H_
#define GEOFED_LOCAL_TRAINING_H_

#include <string>
#include <vector>

#include "geofed/manifold.h"
#include "geofed/mechanism.h"
#include "geofed/problems.h"
#include "geofed/rng.h"

namespace geofed {

enum class OutputOption { kLast, kUniformRandom };

std::string OutputOptionName(OutputOption option);
// "last" or "uniform"; throws kInvalidArgument otherwise.
OutputOption ParseOutputOption(const std::string& name);

struct RsgdConfig {
  int steps = 1;  // K
  int batch = 1;  // b_i
  ClipThreshold tau = ClipThreshold::Disabled();
  NoiseScale sigma = NoiseScale(0.0);
  double alpha = 0.1;
  OutputOption output = OutputOption::kLast;
};

struct RsvrgConfig {
  int outer = 1;  // K
  int inner = 1;  // m
  ClipThreshold tau0 = ClipThreshold::Disabled();  // full-gradient clip
  ClipThreshold tau1 = ClipThreshold::Disabled();  // per-sample clip
  NoiseScale sigma = NoiseScale(0.0);
  double alpha = 0.1;
  OutputOption output = OutputOption::kLast;
};

struct LocalResult {
  ManifoldPoint point;
  // Option-2 candidates: x_0..x_K for DP-RSGD, the K*m inner iterates
  // x_{k+1,j} (j < m) for DP-RSVRG.
  std::vector<ManifoldPoint> visited;
  int step_count = 0;
};

// Random draws come from children of `rng`: kBatch/kNoise keyed by step
// index, kIndex for the inner sample of DP-RSVRG, kOutput for Option 2.
// The variance-reduced trainer keys step (k, j) as k*m + j, so with m = 1 it
// consumes exactly the noise DP-RSGD would.
//
// Throws kBatchTooLarge when the batch exceeds the shard and
// kInvalidArgument for non-positive K, m or negative alpha.
LocalResult DpRsgd(const Problem& problem, const ManifoldPoint& x0,
                   const AgentShard& shard, const RsgdConfig& cfg,
                   const RngStream& rng);

LocalResult DpRsvrg(const Problem& problem, const ManifoldPoint& x0,
                    const AgentShard& shard, const RsvrgConfig& cfg,
                    const RngStream& rng);

}  // namespace geofed

#endif  // GEOFED_LOCAL_TRAINING_H_
