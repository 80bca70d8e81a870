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

#include "geofed/local_training.h"

#include <cmath>
#include <numeric>

#include "geofed/status.h"

namespace geofed {
namespace {

// Slack for the per-step clipping assertions.
constexpr double kClipSlack = 1e-9;

void CheckCommon(const Problem& problem, const ManifoldPoint& x0,
                 const AgentShard& shard, double alpha) {
  if (!(x0.manifold() == problem.manifold())) {
    throw Error(ErrorCode::kInvalidArgument,
                "initial point lives on " + x0.manifold().Name() +
                    ", problem on " + problem.manifold().Name());
  }
  if (shard.data.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty shard");
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidArgument, "step size must be >= 0");
  }
}

void AssertClipped(const TangentVector& v, double bound, const char* what) {
  if (!std::isfinite(bound)) return;
  const double norm = Norm(v);
  if (norm > bound * (1.0 + kClipSlack) + kClipSlack) {
    throw Error(ErrorCode::kInternal,
                std::string(what) + " norm " + std::to_string(norm) +
                    " exceeds its clipping bound " + std::to_string(bound));
  }
}

ManifoldPoint PickUniform(const std::vector<ManifoldPoint>& candidates,
                          const RngStream& rng) {
  RngStream pick = rng.Fork(StreamTag::kOutput);
  return candidates[pick.UniformInt(candidates.size())];
}

}  // namespace

std::string OutputOptionName(OutputOption option) {
  return option == OutputOption::kLast ? "last" : "uniform";
}

OutputOption ParseOutputOption(const std::string& name) {
  if (name == "last") return OutputOption::kLast;
  if (name == "uniform") return OutputOption::kUniformRandom;
  throw Error(ErrorCode::kInvalidArgument,
              "output option must be 'last' or 'uniform', got '" + name + "'");
}

LocalResult DpRsgd(const Problem& problem, const ManifoldPoint& x0,
                   const AgentShard& shard, const RsgdConfig& cfg,
                   const RngStream& rng) {
  CheckCommon(problem, x0, shard, cfg.alpha);
  if (cfg.steps < 1) throw Error(ErrorCode::kInvalidArgument, "need K >= 1");
  const int n = shard.size();
  if (cfg.batch < 1 || cfg.batch > n) {
    throw Error(ErrorCode::kBatchTooLarge,
                "batch " + std::to_string(cfg.batch) + " for a shard of " +
                    std::to_string(n) + " samples");
  }

  std::vector<int> full(n);
  std::iota(full.begin(), full.end(), 0);

  LocalResult result{x0, {x0}, 0};
  ManifoldPoint x = x0;
  for (int k = 0; k < cfg.steps; ++k) {
    std::vector<int> batch;
    if (cfg.batch == n) {
      batch = full;
    } else {
      RngStream draw = rng.Fork(StreamTag::kBatch, k);
      batch = draw.SampleWithoutReplacement(n, cfg.batch);
    }
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(x.coords().rows(),
                                                x.coords().cols());
    for (int idx : batch) {
      sum += Clip(problem.SampleGrad(x, shard.data[idx]), cfg.tau).coords();
    }
    const TangentVector mean = MakeTangentUnchecked(x, sum / cfg.batch);
    AssertClipped(mean, cfg.tau.tau(), "averaged clipped gradient");
    RngStream noise_rng = rng.Fork(StreamTag::kNoise, k);
    const TangentVector eta =
        mean + SampleTangentGaussian(x, cfg.sigma, noise_rng);
    x = Exp(x, eta * (-cfg.alpha));
    result.visited.push_back(x);
    ++result.step_count;
  }
  result.point = cfg.output == OutputOption::kLast
                     ? x
                     : PickUniform(result.visited, rng);
  return result;
}

LocalResult DpRsvrg(const Problem& problem, const ManifoldPoint& x0,
                    const AgentShard& shard, const RsvrgConfig& cfg,
                    const RngStream& rng) {
  CheckCommon(problem, x0, shard, cfg.alpha);
  if (cfg.outer < 1 || cfg.inner < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need K >= 1 and m >= 1");
  }
  const int n = shard.size();
  const double inner_bound = 2.0 * cfg.tau1.tau() + cfg.tau0.tau();

  LocalResult result{x0, {}, 0};
  result.visited.reserve(static_cast<std::size_t>(cfg.outer) * cfg.inner);
  ManifoldPoint anchor = x0;
  for (int k = 0; k < cfg.outer; ++k) {
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(anchor.coords().rows(),
                                                anchor.coords().cols());
    for (const Sample& s : shard.data) {
      sum += Clip(problem.SampleGrad(anchor, s), cfg.tau0).coords();
    }
    const TangentVector g = MakeTangentUnchecked(anchor, sum / n);
    AssertClipped(g, cfg.tau0.tau(), "full clipped gradient");

    ManifoldPoint x = anchor;
    for (int j = 0; j < cfg.inner; ++j) {
      const uint64_t step = static_cast<uint64_t>(k) * cfg.inner + j;
      result.visited.push_back(x);
      RngStream index_rng = rng.Fork(StreamTag::kIndex, step);
      const Sample& s = shard.data[index_rng.UniformInt(n)];
      const TangentVector at_x = Clip(problem.SampleGrad(x, s), cfg.tau1);
      const TangentVector at_anchor =
          Clip(problem.SampleGrad(anchor, s), cfg.tau1);
      const TangentVector direction =
          at_x - Transport(anchor, x, at_anchor - g);
      AssertClipped(direction, inner_bound, "variance-reduced direction");
      RngStream noise_rng = rng.Fork(StreamTag::kNoise, step);
      const TangentVector eta =
          direction + SampleTangentGaussian(x, cfg.sigma, noise_rng);
      x = Exp(x, eta * (-cfg.alpha));
      ++result.step_count;
    }
    anchor = x;
  }
  result.point = cfg.output == OutputOption::kLast
                     ? anchor
                     : PickUniform(result.visited, rng);
  return result;
}

}  // namespace geofed
