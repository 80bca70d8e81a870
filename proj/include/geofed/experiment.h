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

// Experiment runner behind `geofed run`: a JSON config names the problem,
// the data source, the federation and trainer settings and the privacy
// target; the runner executes `repeats` seeded runs and writes
//
//   <output_dir>/run_<r>/trace.csv   round,cost,grad_norm,dist_to_opt,ms
//   <output_dir>/trace_mean.csv      per-round mean (and std) over repeats
//   <output_dir>/summary.json        config echo, resolved settings, final
//                                    statistics and the privacy report
//
// See README.md for the config keys.

#ifndef GEOFED_EXPERIMENT_H_
#define GEOFED_EXPERIMENT_H_

#include <optional>
#include <string>
#include <vector>

#include "geofed/data.h"
#include "geofed/federation.h"
#include "geofed/problems.h"

namespace geofed {

struct AlphaSpec {
  enum class Kind { kValue, kRule, kSquareSummable };
  Kind kind = Kind::kValue;
  double value = 0.1;
  StepRule rule = StepRule::kConvex;
  double beta = 0.0;  // multi-step rule
  double a = 0.0;
  double b = 1.0;
};

struct RunConfig {
  ProblemKind problem = ProblemKind::kPca;

  // Data: generated unless csv_path is set.
  SphereGenSpec sphere;
  SpdGenSpec spd;
  HspGenSpec hsp;
  std::string csv_path;
  int csv_agents = 1;
  int csv_dim = 0;
  int csv_feature_dim = 0;

  // Kernel-regression query for the HSP objective.
  double hsp_gamma = 1e-7;
  double hsp_bandwidth = 1.2;
  std::optional<std::vector<double>> hsp_query;
  std::optional<std::vector<double>> hsp_truth;

  bool random_init = true;

  FederationConfig federation;  // tau / alpha / m / sigma resolved at run time
  int sampled = 0;              // 0 = all agents
  bool tau_auto = true;
  bool tau0_auto = true;
  bool tau1_auto = true;
  bool inner_auto = false;
  AlphaSpec alpha;

  // Privacy: calibrated from (epsilon, delta) when `dp` is set, otherwise
  // a fixed sigma (default 0).
  bool dp = false;
  LocalPrivacy privacy;
  double scale_const = 1.0;
  double fixed_sigma = 0.0;

  int repeats = 1;
  std::string output_dir = "geofed_out";

  std::string source_json;  // the config as written, echoed into summaries
};

// Throws kValidationError on unknown keys, wrong types or invalid values.
RunConfig ParseRunConfig(const std::string& json_text);
RunConfig LoadRunConfig(const std::string& path);

struct RunOptions {
  bool no_dp = false;   // sigma = 0 and clipping disabled
  int threads = 0;      // 0: GEOFED_THREADS, else hardware concurrency
  bool write_outputs = true;
};

struct RepeatOutcome {
  FederationResult result;
  double dist_to_truth;  // NaN unless a ground truth is known
};

struct RunReport {
  Problem problem;
  std::vector<AgentShard> shards;
  ManifoldPoint x0;
  ManifoldPoint oracle;
  double oracle_cost;
  ProblemConstants constants;
  FederationConfig resolved;  // repeat 0's settings, seed aside
  std::optional<ManifoldPoint> truth;
  std::vector<RepeatOutcome> repeats;
  std::string summary_json;
};

RunReport ExecuteRun(const RunConfig& config, const RunOptions& options = {});

// GEOFED_THREADS when set to a positive integer, else the hardware
// concurrency (at least 1).
int DefaultThreadCount();

// CSV text of a trace, with shortest round-trip number formatting.
std::string RenderTraceCsv(const RunTrace& trace);

}  // namespace geofed

#endif  // GEOFED_EXPERIMENT_H_
