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

// Synthetic generators for the three objectives, CSV ingestion and shard
// splitting.
//
// CSV schema, one sample per row, comma separated, '#' starts a comment:
//   pca   z_1..z_{d+1}
//   spd   Z row-major (n*n values)
//   hsp   w_1..w_r, y_1..y_{d+1}
// Any row may carry a leading integer agent_id column; it is detected from
// the row arity. An optional header line (first field non-numeric) is
// skipped.

#ifndef GEOFED_DATA_H_
#define GEOFED_DATA_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geofed/problems.h"

namespace geofed {

struct SphereGenSpec {
  int n_agents = 1;
  int per_agent = 1;
  int ambient_dim = 6;  // d + 1
  double eigengap = 1e-3;
  uint64_t seed = 0;
};

struct SpdGenSpec {
  int n_agents = 1;
  int per_agent = 1;
  int dim = 2;
  double diameter_bound = 1.0;  // D_W
  uint64_t seed = 0;
};

struct HspGenSpec {
  int n_agents = 1;
  int per_agent = 1;
  int feature_dim = 3;  // r
  int target_dim = 2;   // d
  double noise = 0.0;   // tangent noise std on targets
  double map_scale = 0.3;
  uint64_t seed = 0;
};

struct HspDataset {
  std::vector<AgentShard> shards;
  Eigen::VectorXd query;
  ManifoldPoint truth;
  Eigen::MatrixXd map;  // A, d x r
};

// Z_i = U_i Sigma_i V_i with Sigma_i = diag(1, 1 - 1.1 nu, ..., 1 - 1.4 nu,
// |y_1|/(d+1), ...). Throws kGenError when N_i < d+1, d+1 < 6 or
// nu outside (0, 1/1.4).
std::vector<AgentShard> GenSphereData(const SphereGenSpec& spec);
// The diagonal Sigma_i used for agent i.
Eigen::VectorXd SphereSingularValues(const SphereGenSpec& spec, int agent);

// Wishart W(I/n, n) samples, kept when dist(Z, I) <= D_W / 2. Throws
// kGenError when the acceptance rate is below 1% after 10^5 trials.
std::vector<AgentShard> GenSpdData(const SpdGenSpec& spec);

// Targets y = Exp_o(A w) at the hyperboloid origin o for a random linear map
// A; features uniform on [-1, 1]^r; query uniform on [-1/2, 1/2]^r.
HspDataset GenHspData(const HspGenSpec& spec);
ManifoldPoint HspTarget(const Eigen::MatrixXd& map, const Eigen::VectorXd& w);

struct CsvSchema {
  ProblemKind kind = ProblemKind::kPca;
  int dim = 0;          // d+1 (pca), n (spd), d (hsp)
  int feature_dim = 0;  // r (hsp)

  int Arity() const;
};

// Throws kParseError (with line number) on malformed rows and
// kValidationError for samples violating manifold invariants. Without an
// agent_id column, rows are dealt round-robin over n_agents.
std::vector<AgentShard> LoadCsv(const std::string& path,
                                const CsvSchema& schema, int n_agents);
std::vector<AgentShard> ParseCsv(std::istream& in, const CsvSchema& schema,
                                 int n_agents);

// Writes one row per sample with a leading agent_id column; values use the
// shortest round-trip representation.
void WriteCsv(std::ostream& out, std::span<const AgentShard> shards);
void SaveCsv(const std::string& path, std::span<const AgentShard> shards);

struct SplitPolicy {
  enum class Kind { kEqual, kProportional };
  Kind kind = Kind::kEqual;
  std::vector<double> proportions;

  static SplitPolicy Equal() { return {}; }
  static SplitPolicy Proportional(std::vector<double> p) {
    return {Kind::kProportional, std::move(p)};
  }
};

// Contiguous partition of `samples` into n_agents shards. Equal requires the
// count to divide evenly; proportional uses largest-remainder rounding and
// requires every shard to be nonempty. Throws kSplitError otherwise.
std::vector<AgentShard> SplitShards(std::vector<Sample> samples, int n_agents,
                                    const SplitPolicy& policy);

}  // namespace geofed

#endif  // GEOFED_DATA_H_
