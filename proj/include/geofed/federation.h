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

// The federated outer loop: sample s of N agents, broadcast the global
// iterate, train locally in parallel, aggregate by the weighted tangent mean
//
//   x+ = Exp_x( sum_{i in S} (N_i / sum_{j in S} N_j) Log_x(x_i) ).

#ifndef GEOFED_FEDERATION_H_
#define GEOFED_FEDERATION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geofed/accountant.h"
#include "geofed/local_training.h"
#include "geofed/manifold.h"
#include "geofed/problems.h"
#include "geofed/rng.h"

namespace geofed {

enum class TrainerKind { kDpRsgd, kDpRsvrg };

std::string TrainerKindName(TrainerKind kind);
// "dp_rsgd" or "dp_rsvrg".
TrainerKind ParseTrainerKind(const std::string& name);

// alpha_t = a for kConstant, a / (b + t) for kSquareSummable.
struct StepSchedule {
  enum class Kind { kConstant, kSquareSummable };
  Kind kind = Kind::kConstant;
  double a = 0.1;
  double b = 1.0;

  static StepSchedule Constant(double alpha) {
    return {Kind::kConstant, alpha, 0.0};
  }
  static StepSchedule SquareSummable(double a, double b) {
    return {Kind::kSquareSummable, a, b};
  }
  double At(int round) const;
  void Validate() const;
};

// Either a fixed sigma for every agent or a per-agent calibration from a
// local (epsilon, delta) target.
struct NoiseSpec {
  bool calibrated = false;
  double sigma = 0.0;
  LocalPrivacy privacy;
  double scale_const = 1.0;

  static NoiseSpec Fixed(double s) { return {false, s, {}, 1.0}; }
  static NoiseSpec Calibrated(LocalPrivacy p, double scale_const = 1.0) {
    return {true, 0.0, p, scale_const};
  }
};

struct FederationConfig {
  int rounds = 1;   // T
  int sampled = 1;  // s
  TrainerKind trainer = TrainerKind::kDpRsgd;
  int local_steps = 1;  // K
  // Batch size b_i. 0 selects the full shard; batch_fraction > 0 selects
  // max(1, floor(fraction * N_i)) instead.
  int batch = 0;
  double batch_fraction = 0.0;
  int inner_steps = 1;  // m
  // Clipping thresholds; +infinity disables clipping.
  double tau = 1.0;   // DP-RSGD
  double tau0 = 1.0;  // DP-RSVRG full gradient
  double tau1 = 1.0;  // DP-RSVRG per-sample
  StepSchedule alpha;
  OutputOption local_output = OutputOption::kLast;
  OutputOption output = OutputOption::kLast;
  NoiseSpec noise;
  double delta_hat = 1e-3;
  uint64_t seed = 0;
  int threads = 1;
  // Fill TraceRecord::ms with elapsed wall time. Off by default so traces
  // are bitwise reproducible.
  bool record_wall_time = false;

  void Validate(int n_agents) const;
};

struct TraceRecord {
  int round = 0;
  double cost = 0.0;
  double grad_norm = 0.0;
  double dist_to_opt = 0.0;  // NaN without an oracle
  double ms = 0.0;
};

struct RunTrace {
  std::vector<TraceRecord> records;  // rounds 0..T
};

struct FederationResult {
  ManifoldPoint output;
  RunTrace trace;
  std::vector<ManifoldPoint> iterates;  // x^(0..T)
  Schedule schedule;
  std::vector<double> sigmas;  // per agent
  // Present when the noise was calibrated from a local privacy target.
  std::optional<BudgetReport> privacy;
};

// s distinct agent indices, uniform over all s-subsets, sorted ascending.
// Throws kInvalidSample unless 1 <= s <= N.
std::vector<int> SubsampleAgents(int n, int s, RngStream& rng);

// Exp_anchor(sum_k w_k Log_anchor(p_k)). Weights must be nonnegative and sum
// to one within 1e-12.
ManifoldPoint TangentMean(const ManifoldPoint& anchor,
                          std::span<const ManifoldPoint> points,
                          std::span<const double> weights);

// Per-agent noise scales for the configured trainer.
std::vector<double> AgentSigmas(const FederationConfig& cfg,
                                std::span<const AgentShard> shards);

// Runs T rounds from x0. When `oracle` is given, trace records carry the
// distance to it. Results are bitwise identical for any thread count.
FederationResult RunPriRFed(const Problem& problem,
                            std::span<const AgentShard> shards,
                            const ManifoldPoint& x0,
                            const FederationConfig& cfg,
                            const std::optional<ManifoldPoint>& oracle = {});

}  // namespace geofed

#endif  // GEOFED_FEDERATION_H_
